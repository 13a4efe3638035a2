#pragma once

#include <compare>
#include <string>

namespace padyn {

// Extended valuation: the integer v_p(x), or +infinity for x = 0.
// Norms are never materialized as reals; every norm comparison in the
// library goes through this type (|x| = p^-v, so norm order is the
// reverse of valuation order).
class ExtValuation {
public:
    static ExtValuation finite(long v) { return ExtValuation(v, false); }
    static ExtValuation infinity() { return ExtValuation(0, true); }

    bool is_infinity() const { return inf_; }
    // Precondition: finite.
    long value() const;

    // v(xy) = v(x) + v(y), infinity absorbing.
    ExtValuation operator+(const ExtValuation& o) const {
        if (inf_ || o.inf_) return infinity();
        return finite(v_ + o.v_);
    }
    ExtValuation operator-() const;

    bool operator==(const ExtValuation& o) const {
        return inf_ == o.inf_ && (inf_ || v_ == o.v_);
    }
    // Infinity compares greater than every finite valuation.
    std::strong_ordering operator<=>(const ExtValuation& o) const {
        if (inf_ && o.inf_) return std::strong_ordering::equal;
        if (inf_) return std::strong_ordering::greater;
        if (o.inf_) return std::strong_ordering::less;
        return v_ <=> o.v_;
    }

    bool operator>=(long m) const { return inf_ || v_ >= m; }
    bool operator>(long m) const { return inf_ || v_ > m; }
    bool operator==(long m) const { return !inf_ && v_ == m; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    ExtValuation(long v, bool inf) : v_(v), inf_(inf) {}
    long v_;
    bool inf_;
};

inline ExtValuation min(const ExtValuation& a, const ExtValuation& b) {
    return a <= b ? a : b;
}

// |x| < |y|  <=>  v(x) > v(y)
enum class NormOrder { Less, Equal, Greater };

}  // namespace padyn
