#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace treedepth {

/// Raised when a modular inverse of zero is requested.
class DenominatorVanished : public std::domain_error {
public:
    DenominatorVanished() : std::domain_error("denominator vanished modulo m") {}
};

// ---------------------------------------------------------------------------
// Coefficient rings. Each ring is a small value object with the operations
// zero, one, from_int, add, sub, mul, neg, is_zero and same_as.

/// Arbitrary-precision integers.
struct ExactRing {
    using value_type = mpz_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpz_class(static_cast<long>(v)); }
    value_type from_mpz(const mpz_class& v) const { return v; }
    void add_to(value_type& a, const value_type& b) const { a += b; }
    void sub_from(value_type& a, const value_type& b) const { a -= b; }
    void add_product(value_type& acc, const value_type& a, const value_type& b) const {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    mpz_class to_mpz(const value_type& a) const { return a; }
    bool same_as(const ExactRing&) const { return true; }
};

/// Integers modulo m for 2 <= m < 2^63, canonical representatives in [0, m).
struct ModRing64 {
    using value_type = std::uint64_t;
    std::uint64_t m;

    explicit ModRing64(std::uint64_t modulus) : m(modulus) {
        if (modulus < 2 || modulus >= (std::uint64_t{1} << 63))
            throw std::invalid_argument("ModRing64 modulus out of range");
    }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(m);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(m) : r);
    }
    value_type from_mpz(const mpz_class& v) const { return mpz_fdiv_ui(v.get_mpz_t(), m); }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= m ? s - m : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m - b); }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % m);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : m - a; }
    void add_to(value_type& a, value_type b) const { a = add(a, b); }
    void sub_from(value_type& a, value_type b) const { a = sub(a, b); }
    void add_product(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }
    bool is_zero(value_type a) const { return a == 0; }
    mpz_class to_mpz(value_type a) const { return mpz_class(static_cast<unsigned long>(a)); }
    bool same_as(const ModRing64& o) const { return m == o.m; }
};

/// Integers modulo an arbitrary-size m, canonical representatives in [0, m).
struct ModRingBig {
    using value_type = mpz_class;
    mpz_class m;

    explicit ModRingBig(mpz_class modulus) : m(std::move(modulus)) {
        if (m < 2) throw std::invalid_argument("ModRingBig modulus must be >= 2");
    }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return from_mpz(mpz_class(static_cast<long>(v))); }
    value_type from_mpz(const mpz_class& v) const {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    value_type add(const value_type& a, const value_type& b) const {
        mpz_class s = a + b;
        if (s >= m) s -= m;
        return s;
    }
    value_type sub(const value_type& a, const value_type& b) const {
        mpz_class s = a - b;
        if (s < 0) s += m;
        return s;
    }
    value_type mul(const value_type& a, const value_type& b) const { return from_mpz(a * b); }
    value_type neg(const value_type& a) const { return sgn(a) == 0 ? a : mpz_class(m - a); }
    void add_to(value_type& a, const value_type& b) const {
        a += b;
        if (a >= m) a -= m;
    }
    void sub_from(value_type& a, const value_type& b) const {
        a -= b;
        if (a < 0) a += m;
    }
    void add_product(value_type& acc, const value_type& a, const value_type& b) const {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    mpz_class to_mpz(const value_type& a) const { return a; }
    bool same_as(const ModRingBig& o) const { return m == o.m; }
};

/// Inverse of c modulo m; requires gcd(c, m) = 1, which holds for every
/// non-zero c when m is prime.
inline std::uint64_t mod_inverse(std::uint64_t c, const ModRing64& ring) {
    c %= ring.m;
    if (c == 0) throw DenominatorVanished();
    __int128 t = 0, new_t = 1;
    __int128 r = ring.m, new_r = c;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("element is not invertible");
    if (t < 0) t += ring.m;
    return static_cast<std::uint64_t>(t);
}

inline mpz_class mod_inverse(const mpz_class& c, const ModRingBig& ring) {
    mpz_class r = ring.from_mpz(c);
    if (sgn(r) == 0) throw DenominatorVanished();
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), ring.m.get_mpz_t()) == 0)
        throw std::domain_error("element is not invertible");
    return inv;
}

// ---------------------------------------------------------------------------

/// Polynomial in x with degrees 0..cap-1 kept and everything above clipped.
template <class Ring>
class TruncatedPolynomial {
public:
    using value_type = typename Ring::value_type;
    // degree caps are small (at most d * depth(T)), so most polynomials fit inline
    using storage_type = boost::container::small_vector<value_type, 8>;

    TruncatedPolynomial(const Ring& ring, int cap) : ring_(&ring), cap_(cap) {
        if (cap < 1) throw std::invalid_argument("polynomial cap must be positive");
    }

    TruncatedPolynomial(const Ring& ring, int cap, std::vector<value_type> coeffs)
        : TruncatedPolynomial(ring, cap) {
        coeffs_.assign(std::make_move_iterator(coeffs.begin()), std::make_move_iterator(coeffs.end()));
        if (static_cast<int>(coeffs_.size()) > cap_) coeffs_.resize(static_cast<std::size_t>(cap_));
    }

    static TruncatedPolynomial constant(const Ring& ring, int cap, value_type c) {
        TruncatedPolynomial out(ring, cap);
        out.coeffs_.push_back(std::move(c));
        return out;
    }

    const Ring& ring() const { return *ring_; }
    int cap() const { return cap_; }
    const storage_type& coeffs() const { return coeffs_; }

    value_type coeff(int i) const {
        return i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : ring_->zero();
    }
    value_type free_term() const { return coeff(0); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const value_type& c) { return ring_->is_zero(c); });
    }

    /// Highest degree with a non-zero coefficient, -1 for the zero polynomial.
    int degree() const {
        for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
            if (!ring_->is_zero(coeffs_[i])) return i;
        return -1;
    }

    TruncatedPolynomial& operator+=(const TruncatedPolynomial& o) {
        check_ring(o);
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(std::min(o.coeffs_.size(), std::size_t(cap_)), ring_->zero());
        for (std::size_t i = 0; i < o.coeffs_.size() && i < coeffs_.size(); ++i) ring_->add_to(coeffs_[i], o.coeffs_[i]);
        return *this;
    }

    TruncatedPolynomial& operator-=(const TruncatedPolynomial& o) {
        check_ring(o);
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(std::min(o.coeffs_.size(), std::size_t(cap_)), ring_->zero());
        for (std::size_t i = 0; i < o.coeffs_.size() && i < coeffs_.size(); ++i) ring_->sub_from(coeffs_[i], o.coeffs_[i]);
        return *this;
    }

    friend TruncatedPolynomial operator+(TruncatedPolynomial a, const TruncatedPolynomial& b) { return a += b; }
    friend TruncatedPolynomial operator-(TruncatedPolynomial a, const TruncatedPolynomial& b) { return a -= b; }

    /// Product clipped at the smaller of the two caps.
    friend TruncatedPolynomial operator*(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        a.check_ring(b);
        const Ring& R = *a.ring_;
        int cap = std::min(a.cap_, b.cap_);
        TruncatedPolynomial out(R, cap);
        int da = a.degree(), db = b.degree();
        if (da < 0 || db < 0) return out;
        int len = std::min(cap, da + db + 1);
        out.coeffs_.assign(static_cast<std::size_t>(len), R.zero());
        for (int i = 0; i <= da && i < len; ++i) {
            if (R.is_zero(a.coeffs_[i])) continue;
            for (int j = 0; j <= db && i + j < len; ++j) R.add_product(out.coeffs_[i + j], a.coeffs_[i], b.coeffs_[j]);
        }
        return out;
    }

    TruncatedPolynomial scaled(const value_type& c) const {
        TruncatedPolynomial out(*this);
        for (auto& x : out.coeffs_) x = ring_->mul(x, c);
        return out;
    }

    /// Multiplication by x^e (clipped).
    TruncatedPolynomial shifted_up(int e) const {
        TruncatedPolynomial out(*ring_, cap_);
        if (static_cast<int>(coeffs_.size()) + e <= 0 || e >= cap_) return out;
        out.coeffs_.assign(static_cast<std::size_t>(e), ring_->zero());
        for (std::size_t i = 0; i < coeffs_.size() && static_cast<int>(out.coeffs_.size()) < cap_; ++i)
            out.coeffs_.push_back(coeffs_[i]);
        return out;
    }

    /// The shift x^i -> x^(i-e): coefficients below degree e are discarded,
    /// so this is not division in the ring.
    TruncatedPolynomial div_by_x_power(int e) const {
        if (e < 0) throw std::invalid_argument("negative exponent");
        TruncatedPolynomial out(*ring_, cap_);
        if (e < static_cast<int>(coeffs_.size())) out.coeffs_.assign(coeffs_.begin() + e, coeffs_.end());
        return out;
    }

    TruncatedPolynomial with_cap(int cap) const {
        TruncatedPolynomial out(*ring_, cap);
        out.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + std::min<std::ptrdiff_t>(coeffs_.size(), cap));
        return out;
    }

    /// Equality up to trailing zeros (caps are ignored).
    friend bool operator==(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return false;
        for (int i = 0; i <= da; ++i)
            if (a.ring_->to_mpz(a.coeffs_[i]) != b.ring_->to_mpz(b.coeffs_[i])) return false;
        return true;
    }

private:
    void check_ring(const TruncatedPolynomial& o) const {
        if (!ring_->same_as(*o.ring_)) throw std::invalid_argument("polynomial ring mismatch");
    }

    const Ring* ring_;
    int cap_;
    storage_type coeffs_;
};

// ---------------------------------------------------------------------------
// Runtime description of a coefficient ring.

struct CoefficientRing {
    enum class Kind { Exact, Modular };
    Kind kind = Kind::Exact;
    mpz_class modulus = 0;
    bool prime = false;

    static CoefficientRing exact() { return {}; }
    static CoefficientRing modular(mpz_class m, bool is_prime) { return {Kind::Modular, std::move(m), is_prime}; }

    bool is_exact() const { return kind == Kind::Exact; }
};

/// Calls fn with a concrete ring object matching desc.
template <class Fn>
decltype(auto) visit_ring(const CoefficientRing& desc, Fn&& fn) {
    if (desc.is_exact()) return fn(ExactRing{});
    if (desc.modulus < mpz_class(1) << 63) return fn(ModRing64(desc.modulus.get_ui()));
    return fn(ModRingBig(desc.modulus));
}

// ---------------------------------------------------------------------------
// Primes.

namespace detail {
inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}
}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases decide every
/// 64-bit input.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimeSamplerConfig {
    std::uint64_t lower = 21;  // L
    double error_exponent = 1.0;  // C
    std::uint64_t word_cap = std::uint64_t{1} << 62;

    /// A = max(L, n^5 2^(5 C d^2)), capped at word_cap.
    std::uint64_t interval_bound(std::uint64_t n, int d) const {
        double log2A = 5.0 * std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1))) +
                       5.0 * error_exponent * d * d;
        std::uint64_t a = log2A >= std::log2(static_cast<double>(word_cap))
                              ? word_cap
                              : static_cast<std::uint64_t>(std::exp2(log2A));
        return std::min(std::max(lower, a), word_cap);
    }
};

/// Uniform random integers from (A, 2A) until one is prime.
template <class Rng>
std::uint64_t sample_prime(std::uint64_t A, Rng& rng, std::uint64_t max_trials = 0) {
    if (A < 2 || A > (std::uint64_t{1} << 62)) throw std::invalid_argument("prime interval (A, 2A) is empty or too large");
    std::uniform_int_distribution<std::uint64_t> dist(A + 1, 2 * A - 1);
    for (std::uint64_t t = 0; max_trials == 0 || t < max_trials; ++t) {
        std::uint64_t x = dist(rng);
        if (is_prime(x)) return x;
    }
    throw std::runtime_error("prime sampling exhausted its trial budget");
}

}  // namespace treedepth
