#pragma once

// Exact Q_p arithmetic at capped relative precision.
//
// A nonzero value is stored as  u * p^v + O(p^(v+r))  with u a unit mantissa
// modulo p^r.  Zero comes in two flavours: the exact zero (infinite absolute
// precision) and an inexact zero O(p^A), which records that a computation
// cancelled down to (at least) absolute precision A.  Arithmetic never
// reports digits beyond what the inputs support.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace padlog {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};
struct prime_mismatch : error {
    prime_mismatch() : error("p-adic prime mismatch") {}
};
struct division_by_zero : error {
    division_by_zero() : error("division by (indistinguishable-from-)zero") {}
};
struct bad_reduction : error {
    explicit bad_reduction(const std::string& w = "point of bad reduction") : error(w) {}
};
struct precision_error : error {
    explicit precision_error(const std::string& w = "precision exhausted") : error(w) {}
};
struct residue_error : error {
    explicit residue_error(const std::string& w = "nonzero residue") : error(w) {}
};

inline constexpr long kInfValuation = std::numeric_limits<long>::max() / 4;

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class pow_p(long p, long e) {
    return pow_z(mpz_class(p), static_cast<unsigned long>(e));
}

// valuation of n at p; n must be nonzero
inline long val_p(mpz_class n, long p) {
    if (n == 0) throw error("val_p of zero");
    long v = 0;
    mpz_class q, r;
    mpz_class zp(p);
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), zp.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

inline long val_p(const mpq_class& q, long p) {
    if (q == 0) throw error("val_p of zero");
    return val_p(q.get_num(), p) - val_p(q.get_den(), p);
}

class Padic {
  public:
    enum class Kind : uint8_t { exact_zero, inexact_zero, finite };

    Padic() : prime_(2), kind_(Kind::exact_zero), val_(0), prec_(0) {}

    static Padic zero(long p) {
        Padic x;
        x.prime_ = p;
        x.kind_ = Kind::exact_zero;
        return x;
    }

    // O(p^abs_prec): indistinguishable from zero at absolute precision abs_prec
    static Padic zero_to(long p, long abs_prec) {
        Padic x;
        x.prime_ = p;
        x.kind_ = Kind::inexact_zero;
        x.val_ = abs_prec;
        x.prec_ = 0;
        return x;
    }

    static Padic from_integer(long p, const mpz_class& n, long prec) {
        if (n == 0) return zero(p);
        Padic x;
        x.prime_ = p;
        x.kind_ = Kind::finite;
        x.prec_ = prec;
        x.val_ = val_p(n, p);
        mpz_class unit = n / pow_p(p, x.val_);
        x.man_ = mod_pow(unit, p, prec);
        return x;
    }

    static Padic from_rational(long p, const mpq_class& q, long prec) {
        if (q == 0) return zero(p);
        long vn = val_p(q.get_num(), p);
        long vd = val_p(q.get_den(), p);
        mpz_class num = q.get_num() / pow_p(p, vn);
        mpz_class den = q.get_den() / pow_p(p, vd);
        Padic x;
        x.prime_ = p;
        x.kind_ = Kind::finite;
        x.prec_ = prec;
        x.val_ = vn - vd;
        mpz_class m = pow_p(p, prec);
        mpz_class deninv;
        if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()))
            throw error("internal: denominator not invertible");
        x.man_ = mod_pow(num * deninv, p, prec);
        return x;
    }

    long prime() const { return prime_; }
    Kind kind() const { return kind_; }
    bool is_exact_zero() const { return kind_ == Kind::exact_zero; }
    // exact zero or below-precision zero
    bool is_zero() const { return kind_ != Kind::finite; }

    // valuation; for an inexact zero this is a lower bound, for the exact
    // zero it is the +infinity sentinel
    long valuation() const {
        switch (kind_) {
            case Kind::exact_zero: return kInfValuation;
            default: return val_;
        }
    }

    // known digits past the valuation (0 for zeros)
    long precision() const { return kind_ == Kind::finite ? prec_ : 0; }

    long abs_precision() const {
        switch (kind_) {
            case Kind::exact_zero: return kInfValuation;
            case Kind::inexact_zero: return val_;
            default: return val_ + prec_;
        }
    }

    const mpz_class& mantissa() const { return man_; }

    // |x| <= p^-k, as far as the tracked precision can tell
    bool bounded_by(long k) const {
        if (kind_ == Kind::exact_zero) return true;
        return val_ >= k;
    }

    Padic operator-() const {
        if (kind_ != Kind::finite) return *this;
        Padic x = *this;
        x.man_ = pow_p(prime_, prec_) - man_;
        return x;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        check_primes(a, b);
        if (a.kind_ == Kind::exact_zero) return b;
        if (b.kind_ == Kind::exact_zero) return a;
        long A = std::min(a.abs_precision(), b.abs_precision());
        if (a.kind_ == Kind::inexact_zero) return cap_abs(b, A);
        if (b.kind_ == Kind::inexact_zero) return cap_abs(a, A);
        long v = std::min(a.val_, b.val_);
        if (v >= A) return zero_to(a.prime_, A);
        long digits = A - v;
        mpz_class m = pow_p(a.prime_, digits);
        mpz_class s = a.man_ * pow_p(a.prime_, a.val_ - v) + b.man_ * pow_p(a.prime_, b.val_ - v);
        s %= m;
        if (s < 0) s += m;
        if (s == 0) return zero_to(a.prime_, A);
        long w = val_p(s, a.prime_);
        long v2 = v + w;
        if (v2 >= A) return zero_to(a.prime_, A);
        Padic x;
        x.prime_ = a.prime_;
        x.kind_ = Kind::finite;
        x.val_ = v2;
        x.prec_ = A - v2;
        x.man_ = mod_pow(s / pow_p(a.prime_, w), a.prime_, x.prec_);
        return x;
    }

    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    friend Padic operator*(const Padic& a, const Padic& b) {
        check_primes(a, b);
        if (a.kind_ == Kind::exact_zero || b.kind_ == Kind::exact_zero)
            return zero(a.prime_);
        if (a.kind_ == Kind::inexact_zero || b.kind_ == Kind::inexact_zero) {
            long A = a.valuation() + b.valuation();
            return zero_to(a.prime_, A);
        }
        Padic x;
        x.prime_ = a.prime_;
        x.kind_ = Kind::finite;
        x.val_ = a.val_ + b.val_;
        x.prec_ = std::min(a.prec_, b.prec_);
        x.man_ = mod_pow(a.man_ * b.man_, a.prime_, x.prec_);
        return x;
    }

    friend Padic operator/(const Padic& a, const Padic& b) {
        check_primes(a, b);
        if (b.kind_ == Kind::exact_zero) throw division_by_zero();
        if (b.kind_ == Kind::inexact_zero)
            throw precision_error("divisor indistinguishable from zero");
        if (a.kind_ == Kind::exact_zero) return a;
        if (a.kind_ == Kind::inexact_zero) return zero_to(a.prime_, a.val_ - b.val_);
        Padic x;
        x.prime_ = a.prime_;
        x.kind_ = Kind::finite;
        x.val_ = a.val_ - b.val_;
        x.prec_ = std::min(a.prec_, b.prec_);
        mpz_class m = pow_p(a.prime_, x.prec_);
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), b.man_.get_mpz_t(), m.get_mpz_t()))
            throw error("internal: mantissa not invertible");
        x.man_ = mod_pow(a.man_ * inv, a.prime_, x.prec_);
        return x;
    }

    Padic inverse() const { return from_integer(prime_, 1, precision() ? prec_ : 1) / *this; }

    Padic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Padic acc = from_integer(prime_, 1, kind_ == Kind::finite ? prec_ : 1);
        Padic base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // integer lift of the value modulo p^abs (abs <= abs_precision)
    mpz_class lift(long abs) const {
        if (abs > abs_precision()) throw precision_error("lift beyond tracked precision");
        if (kind_ != Kind::finite || val_ >= abs) return 0;
        mpz_class m = pow_p(prime_, abs);
        mpz_class r = man_ * pow_p(prime_, val_);
        r %= m;
        if (r < 0) r += m;
        return r;
    }

    // balanced rational representative u*p^v with |u| <= p^prec/2
    mpq_class lift_balanced() const {
        if (kind_ != Kind::finite) return mpq_class(0);
        mpz_class m = pow_p(prime_, prec_);
        mpz_class u = man_;
        if (2 * u > m) u -= m;
        mpq_class q(u);
        if (val_ >= 0)
            q *= mpq_class(pow_p(prime_, val_));
        else
            q /= mpq_class(pow_p(prime_, -val_));
        return q;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::exact_zero: return "0";
            case Kind::inexact_zero: return "O(" + std::to_string(prime_) + "^" + std::to_string(val_) + ")";
            default:
                return man_.get_str() + "*" + std::to_string(prime_) + "^" + std::to_string(val_) +
                       " + O(" + std::to_string(prime_) + "^" + std::to_string(val_ + prec_) + ")";
        }
    }

  private:
    static void check_primes(const Padic& a, const Padic& b) {
        if (a.prime_ != b.prime_) throw prime_mismatch();
    }

    static mpz_class mod_pow(mpz_class n, long p, long prec) {
        mpz_class m = pow_p(p, prec);
        n %= m;
        if (n < 0) n += m;
        return n;
    }

    static Padic cap_abs(const Padic& x, long A) {
        if (x.kind_ != Kind::finite) return zero_to(x.prime_, std::min(x.valuation(), A));
        if (x.val_ >= A) return zero_to(x.prime_, A);
        if (x.val_ + x.prec_ <= A) return x;
        Padic y = x;
        y.prec_ = A - x.val_;
        y.man_ = mod_pow(x.man_, x.prime_, y.prec_);
        return y;
    }

    long prime_;
    Kind kind_;
    long val_;   // valuation (finite), or absolute precision bound (inexact zero)
    long prec_;
    mpz_class man_;

    friend Padic cap_absolute(const Padic& x, long A);
};

// expose the precision cap (series tail bounds use it)
inline Padic cap_absolute(const Padic& x, long A) {
    if (A >= x.abs_precision()) return x;
    return Padic::cap_abs(x, A);
}

inline bool agree_to(const Padic& a, const Padic& b, long k) { return (a - b).bounded_by(k); }

// Iwasawa-branch logarithm of a unit:
//   log(u) = (p-1)^-1 * sum_{k>=1} -(1-u^(p-1))^k / k.
// The u^(p-1) inside kills the Teichmueller part, so this is the branch with
// log p = 0 restricted to units.
inline Padic iwasawa_log(const Padic& u) {
    if (u.is_zero() || u.valuation() != 0) throw error("iwasawa_log requires a unit");
    long p = u.prime();
    long r = u.precision();
    Padic z = Padic::from_integer(p, 1, r) - u.pow(p - 1);
    if (z.is_zero()) return Padic::zero_to(p, z.abs_precision());
    long vz = z.valuation();
    // tail k > K has v(z^k/k) >= k*vz - log_p k > vz + r
    long K = 1;
    while (true) {
        long lg = 0, t = K;
        while (t >= p) { t /= p; ++lg; }
        if (K * vz - lg > vz + r) break;
        ++K;
    }
    Padic sum = Padic::zero(p);
    Padic zk = Padic::from_integer(p, 1, r + 2);
    for (long k = 1; k <= K; ++k) {
        zk = zk * z;
        sum = sum - zk / Padic::from_integer(p, k, r + 2);
    }
    return sum / Padic::from_integer(p, p - 1, r + 2);
}

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace padlog
