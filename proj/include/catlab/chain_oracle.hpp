#pragma once

namespace catlab {

// Independent oracle for the no-dispersion model's mean extinction time,
// bypassing simulation entirely.  The population-size process has constant
// total event rate lambda+1; its jump chain moves i -> i+1 with probability
// lambda/(lambda+1) and i -> j (0 <= j < i) with probability 1/((lambda+1) i).
// The expected absorption times h_i at state 0 satisfy
//     h_i = 1/(lambda+1) + (lambda/(lambda+1)) h_{i+1}
//           + 1/((lambda+1) i) * sum_{j=1}^{i-1} h_j,        h_0 = 0,
// solved as a dense truncated linear system on states 1..m with the boundary
// closure h_{m+1} := h_m.  Returns h_1 (start = one individual).
//
// With m around 400 the truncation error is far below 1e-9 for lambda <= 6;
// callers can verify by comparing two truncation levels.
double no_dispersion_mean_extinction_time_oracle(double lambda, int m = 400);

}  // namespace catlab
