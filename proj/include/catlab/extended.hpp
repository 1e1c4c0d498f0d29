#pragma once

#include <string>

namespace catlab {

// A nonnegative time that is either finite or infinite.  The infinite case is a
// tag, never a floating-point overflow artifact; it serializes as the literal
// "inf" in CSV and JSON.
class ExtendedTime {
public:
    static ExtendedTime finite(double v) { return ExtendedTime{v, false}; }
    static ExtendedTime infinite() { return ExtendedTime{0.0, true}; }

    bool is_infinite() const { return infinite_; }
    // Valid only when finite; callers must check is_infinite() first.
    double value() const { return value_; }

    bool operator==(const ExtendedTime&) const = default;

private:
    ExtendedTime(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

}  // namespace catlab
