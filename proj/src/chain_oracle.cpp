#include "catlab/chain_oracle.hpp"

#include <cmath>
#include <vector>

#include "catlab/errors.hpp"

namespace catlab {

double no_dispersion_mean_extinction_time_oracle(double lambda, int m) {
    if (!(lambda > 0.0) || m < 2)
        throw DomainError("no_dispersion_mean_extinction_time_oracle: bad arguments");
    // Row for state i (1-based): h_i - up*h_{i+1} - c_i*sum_{j<i} h_j = dt,
    // with up = lambda/(lambda+1), c_i = 1/((lambda+1) i), dt = 1/(lambda+1).
    // At i = m the up-term closes onto h_m itself.
    const double up = lambda / (lambda + 1.0);
    const double dt = 1.0 / (lambda + 1.0);
    std::vector<double> A(std::size_t(m) * m, 0.0);
    std::vector<double> b(m, dt);
    for (int i = 1; i <= m; ++i) {
        const int r = i - 1;
        A[std::size_t(r) * m + r] += 1.0;
        if (i < m)
            A[std::size_t(r) * m + r + 1] -= up;
        else
            A[std::size_t(r) * m + r] -= up;
        const double c = 1.0 / ((lambda + 1.0) * i);
        for (int j = 1; j < i; ++j) A[std::size_t(r) * m + (j - 1)] -= c;
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m; ++col) {
        int best = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(A[std::size_t(r) * m + col]) >
                std::abs(A[std::size_t(best) * m + col]))
                best = r;
        if (best != col) {
            for (int c = 0; c < m; ++c)
                std::swap(A[std::size_t(col) * m + c], A[std::size_t(best) * m + c]);
            std::swap(b[col], b[best]);
        }
        const double pivval = A[std::size_t(col) * m + col];
        if (pivval == 0.0)
            throw ConvergenceError("no_dispersion_mean_extinction_time_oracle: singular system");
        for (int r = col + 1; r < m; ++r) {
            const double f = A[std::size_t(r) * m + col] / pivval;
            if (f == 0.0) continue;
            for (int c = col; c < m; ++c)
                A[std::size_t(r) * m + c] -= f * A[std::size_t(col) * m + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> h(m);
    for (int r = m - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < m; ++c) acc -= A[std::size_t(r) * m + c] * h[c];
        h[r] = acc / A[std::size_t(r) * m + r];
    }
    return h[0];
}

}  // namespace catlab
