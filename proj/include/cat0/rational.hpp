#ifndef CAT0_RATIONAL_HPP
#define CAT0_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cat0 {

// All stored coordinates are exact rationals.  Distances in the Euclidean
// and product model spaces are handled as exact squared values; an actual
// length only ever appears as a decimal approximation in reports.
using Rat = mpq_class;
using Int = mpz_class;

// mpq_class(n, d) does not canonicalize; every construction from a
// numerator/denominator pair must go through here.
inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// 2^{-k} as an exact rational, k >= 0.
inline Rat dyadic(unsigned k) {
    Int d = 1;
    d <<= k;
    return rat(Int(1), d);
}

inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

// Largest power of two 2^{-m} with 9 * 4^{-m} <= delta_sq (i.e. 2^{-m} <= delta/3),
// capped at 1/4.  Used by the cover epsilon policy; keeps every radius dyadic.
inline Rat dyadic_third(const Rat& delta_sq) {
    for (unsigned m = 2; m < 64; ++m) {
        Rat eps = dyadic(m);
        if (9 * eps * eps <= delta_sq) return eps;
    }
    return Rat(0);
}

// floor(sqrt(n)) for nonnegative integers.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Smallest integer b with b^2 >= q (q a nonnegative rational).  Gives a safe
// enumeration box for lattice points inside a ball of squared radius q.
inline Int ceil_sqrt(const Rat& q) {
    if (q <= 0) return 0;
    Int num = q.get_num(), den = q.get_den();
    // ceil(sqrt(num/den)) <= ceil(sqrt(ceil(num/den)))
    Int c = (num + den - 1) / den;
    Int r = isqrt(c);
    if (r * r < c) ++r;
    return r;
}

// Decimal approximation of sqrt(sq) with absolute error <= 1e-12, correctly
// truncated; always flagged approximate by the caller.
std::string approx_sqrt_decimal(const Rat& sq, unsigned digits = 12);

// Decimal approximation of a rational (error <= 10^-digits).
std::string approx_decimal(const Rat& v, unsigned digits = 6);

// Exact predicate sqrt(a) <= sqrt(b) + sqrt(c) for nonnegative rationals,
// i.e. the triangle inequality on squared quantities.
inline bool sqrt_leq_sqrt_plus_sqrt(const Rat& a, const Rat& b, const Rat& c) {
    Rat lhs = a - b - c;
    if (lhs <= 0) return true;
    return lhs * lhs <= 4 * b * c;
}

// Deterministic rational sampler: values k/den with k in [0, den], driven by a
// 64-bit LCG so results depend only on the run seed.
class RatSampler {
public:
    explicit RatSampler(std::uint64_t seed, unsigned den = 256)
        : state_(seed ^ 0x9e3779b97f4a7c15ULL), den_(den) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t x = state_;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 29;
        return x;
    }

    // uniform in {0, 1/den, ..., 1}
    Rat unit() { return rat(long(next_u64() % (den_ + 1)), long(den_)); }

    // uniform in {-range, ..., range} with denominator den
    Rat symmetric(long range) {
        long span = 2 * range * long(den_) + 1;
        long k = long(next_u64() % std::uint64_t(span)) - range * long(den_);
        return rat(k, long(den_));
    }

    std::uint64_t index(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
    unsigned den_;
};

}  // namespace cat0

#endif
