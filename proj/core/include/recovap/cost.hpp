#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace recovap {

// Extended integer cost: a finite 64-bit integer or the sentinel INF.
// INF models an absent edge; it is never a large finite number, so
// arithmetic cannot overflow into fake feasibility.
//   INF + x == INF,  min(INF, x) == x,  INF == INF.
class Cost {
public:
    constexpr Cost() : value_(0), inf_(false) {}
    constexpr Cost(std::int64_t v) : value_(v), inf_(false) {}

    static constexpr Cost inf() {
        Cost c;
        c.inf_ = true;
        return c;
    }

    constexpr bool is_inf() const { return inf_; }
    constexpr bool is_finite() const { return !inf_; }

    std::int64_t value() const {
        if (inf_) throw std::logic_error("Cost: value() on INF");
        return value_;
    }

    friend Cost operator+(Cost a, Cost b) {
        if (a.inf_ || b.inf_) return inf();
        if (b.value_ > 0 && a.value_ > std::numeric_limits<std::int64_t>::max() - b.value_)
            throw std::overflow_error("Cost: addition overflow");
        if (b.value_ < 0 && a.value_ < std::numeric_limits<std::int64_t>::min() - b.value_)
            throw std::overflow_error("Cost: addition overflow");
        return Cost(a.value_ + b.value_);
    }

    Cost& operator+=(Cost b) {
        *this = *this + b;
        return *this;
    }

    friend bool operator==(Cost a, Cost b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.value_ == b.value_;
    }
    friend bool operator!=(Cost a, Cost b) { return !(a == b); }

    // INF compares above every finite value; INF < INF is false.
    friend bool operator<(Cost a, Cost b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(Cost a, Cost b) { return !(b < a); }
    friend bool operator>(Cost a, Cost b) { return b < a; }
    friend bool operator>=(Cost a, Cost b) { return !(a < b); }

    friend Cost min(Cost a, Cost b) { return a < b ? a : b; }

    std::string str() const { return inf_ ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, Cost c) { return os << c.str(); }

private:
    std::int64_t value_;
    bool inf_;
};

}  // namespace recovap
