#pragma once

// Truncated power series on the disk at 0 and truncated Laurent series on the
// formal annulus K[[w,u]]/(wu-1), recentered at t = w + 1.
//
// All Laurent data is truncated to the window [-N, N].  Two error sources are
// tracked:
//   * drop_ledger_: min valuation among coefficients that were directly
//     discarded (construction tails, out-of-window products, the degree-N
//     term lost by primitive());
//   * at evaluation time, a band estimate: the minimum valuation over the
//     outermost window coefficients, which measures the decay the series has
//     actually reached.  Evaluations on |w| = 1 cap their absolute precision
//     at that estimate.  The estimate is empirical by design and is validated
//     by the two-order agreement tests in the suite.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "padlog/padic.hpp"

namespace padlog {

class PowerSeries {
  public:
    PowerSeries(long p, long order) : prime_(p), order_(order), c_(order + 1, Padic::zero(p)) {}

    long prime() const { return prime_; }
    long order() const { return order_; }

    const Padic& coeff(long k) const { return c_.at(k); }
    void set_coeff(long k, const Padic& v) { c_.at(k) = v; }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        long n = std::min(a.order_, b.order_);
        PowerSeries r(a.prime_, n);
        for (long k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        long n = std::min(a.order_, b.order_);
        PowerSeries r(a.prime_, n);
        for (long i = 0; i <= std::min(a.order_, n); ++i) {
            if (a.c_[i].is_exact_zero()) continue;
            for (long j = 0; j <= std::min(b.order_, n - i); ++j) {
                if (b.c_[j].is_exact_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    PowerSeries scaled(const Padic& s) const {
        PowerSeries r(prime_, order_);
        for (long k = 0; k <= order_; ++k) r.c_[k] = c_[k] * s;
        return r;
    }

    Padic evaluate(const Padic& t) const {
        Padic acc = Padic::zero(prime_);
        for (long k = order_; k >= 0; --k) acc = acc * t + c_[k];
        return acc;
    }

  private:
    long prime_, order_;
    std::vector<Padic> c_;
};

class AnnulusElement {
  public:
    AnnulusElement(long p, long order)
        : prime_(p), order_(order), c_(2 * order + 1, Padic::zero(p)), drop_ledger_(kInfValuation) {}

    static AnnulusElement one(long p, long order, long prec) {
        AnnulusElement f(p, order);
        f.set_coeff(0, Padic::from_integer(p, 1, prec));
        return f;
    }

    long prime() const { return prime_; }
    long order() const { return order_; }
    long drop_ledger() const { return drop_ledger_; }
    void charge_ledger(long v) { drop_ledger_ = std::min(drop_ledger_, v); }

    const Padic& coeff(long k) const { return c_.at(k + order_); }
    void set_coeff(long k, const Padic& v) { c_.at(k + order_) = v; }

    friend AnnulusElement operator+(const AnnulusElement& a, const AnnulusElement& b) {
        long n = std::min(a.order_, b.order_);
        AnnulusElement r(a.prime_, n);
        for (long k = -n; k <= n; ++k) r.set_coeff(k, a.coeff_or_zero(k) + b.coeff_or_zero(k));
        r.drop_ledger_ = std::min(a.drop_ledger_, b.drop_ledger_);
        return r;
    }

    friend AnnulusElement operator-(const AnnulusElement& a, const AnnulusElement& b) {
        long n = std::min(a.order_, b.order_);
        AnnulusElement r(a.prime_, n);
        for (long k = -n; k <= n; ++k) r.set_coeff(k, a.coeff_or_zero(k) - b.coeff_or_zero(k));
        r.drop_ledger_ = std::min(a.drop_ledger_, b.drop_ledger_);
        return r;
    }

    AnnulusElement scaled(const Padic& s) const {
        AnnulusElement r(prime_, order_);
        for (long k = -order_; k <= order_; ++k) r.set_coeff(k, coeff(k) * s);
        r.drop_ledger_ = (s.is_exact_zero() || drop_ledger_ >= kInfValuation)
                             ? kInfValuation
                             : drop_ledger_ + s.valuation();
        return r;
    }

    friend AnnulusElement operator*(const AnnulusElement& a, const AnnulusElement& b) {
        long n = std::min(a.order_, b.order_);
        AnnulusElement r(a.prime_, n);
        long dropped = kInfValuation;
        for (long i = -a.order_; i <= a.order_; ++i) {
            const Padic& ai = a.coeff(i);
            if (ai.is_exact_zero()) continue;
            for (long j = -b.order_; j <= b.order_; ++j) {
                const Padic& bj = b.coeff(j);
                if (bj.is_exact_zero()) continue;
                long k = i + j;
                if (k < -n || k > n) {
                    long v = ai.valuation() + bj.valuation();
                    dropped = std::min(dropped, v);
                } else {
                    r.set_coeff(k, r.coeff(k) + ai * bj);
                }
            }
        }
        long va = a.min_window_valuation(), vb = b.min_window_valuation();
        long cross = kInfValuation;
        if (a.drop_ledger_ < kInfValuation) cross = std::min(cross, a.drop_ledger_ + vb);
        if (b.drop_ledger_ < kInfValuation) cross = std::min(cross, b.drop_ledger_ + va);
        if (a.drop_ledger_ < kInfValuation && b.drop_ledger_ < kInfValuation)
            cross = std::min(cross, a.drop_ledger_ + b.drop_ledger_);
        r.drop_ledger_ = std::min(dropped, cross);
        return r;
    }

    long min_window_valuation() const {
        long v = kInfValuation;
        for (const auto& x : c_)
            if (!x.is_exact_zero()) v = std::min(v, x.valuation());
        return v;
    }

    // min valuation over the outermost coefficients; how far the decay got
    long band_estimate(long band = 0) const {
        if (band <= 0) band = std::max<long>(4, order_ / 6);
        long v = kInfValuation;
        for (long k = order_ - band + 1; k <= order_; ++k) {
            v = std::min(v, coeff(k).valuation());
            v = std::min(v, coeff(-k).valuation());
        }
        return v;
    }

    AnnulusElement derivative() const {
        AnnulusElement r(prime_, order_);
        for (long k = -order_; k <= order_; ++k) {
            if (k - 1 < -order_ || k == 0) continue;
            r.set_coeff(k - 1, coeff(k) * Padic::from_integer(prime_, k, 64));
        }
        r.drop_ledger_ = drop_ledger_;
        return r;
    }

  private:
    Padic coeff_or_zero(long k) const {
        if (k < -order_ || k > order_) return Padic::zero(prime_);
        return coeff(k);
    }

    long prime_, order_;
    std::vector<Padic> c_;
    long drop_ledger_;
};

// f dw with f an annulus element
struct AnnulusForm {
    AnnulusElement f;
};

// Laurent data of a function on the annulus ring K[t,u]/(u(t-1)-1):
// a finite sum  sum a_k t^k + sum_{k>=1} b_k u^k.
struct FormLaurentData {
    std::map<long, mpq_class> t_coeffs;
    std::map<long, mpq_class> u_coeffs;
};

// pullback of f(t,u) dt/t through t = w + 1, u = 1/w, times (w+1)^{-1} dw
inline AnnulusForm recenter(const FormLaurentData& data, long p, long order, long prec) {
    long umax = 0;
    for (const auto& [k, b] : data.u_coeffs) {
        if (k < 1) throw error("recenter: u-degrees start at 1");
        umax = std::max(umax, k);
    }
    // enlarged working window so every output coefficient is exact
    long wide = order + umax + 1;
    AnnulusElement g(p, wide);
    for (const auto& [k, a] : data.t_coeffs) {
        if (k < 0) throw error("recenter: negative t-degree not in the annulus ring");
        if (k > order) throw error("recenter: truncation overflow");
        // (w+1)^k
        mpz_class binom = 1;
        for (long j = 0; j <= k; ++j) {
            g.set_coeff(j, g.coeff(j) + Padic::from_rational(p, a * mpq_class(binom), prec));
            binom = binom * (k - j) / (j + 1);
        }
    }
    for (const auto& [k, b] : data.u_coeffs) {
        if (k > order) throw error("recenter: truncation overflow");
        g.set_coeff(-k, g.coeff(-k) + Padic::from_rational(p, b, prec));
    }
    // multiply by the disk-side expansion (w+1)^{-1} = sum (-1)^j w^j
    AnnulusElement geo(p, wide);
    for (long j = 0; j <= wide; ++j)
        geo.set_coeff(j, Padic::from_integer(p, j % 2 ? -1 : 1, prec));
    geo.charge_ledger(0);
    AnnulusElement prod = g * geo;
    AnnulusElement out(p, order);
    for (long k = -order; k <= order; ++k) out.set_coeff(k, prod.coeff(k));
    out.charge_ledger(std::min(prod.drop_ledger(), prod.band_estimate(umax + 1)));
    return AnnulusForm{out};
}

// coefficient of w^{-1}: the residue over the residue disk at t = 1
inline Padic res_disk1(const AnnulusForm& w) { return w.f.coeff(-1); }

// termwise antiderivative with constant term 0; refuses a nonzero residue
inline AnnulusElement primitive(const AnnulusForm& w) {
    const AnnulusElement& f = w.f;
    if (!f.coeff(-1).is_zero()) throw residue_error();
    long p = f.prime(), n = f.order();
    AnnulusElement r(p, n);
    r.charge_ledger(f.drop_ledger());
    for (long k = -n; k <= n; ++k) {
        if (k == -1) continue;
        const Padic& c = f.coeff(k);
        if (c.is_exact_zero()) continue;
        Padic t = c / Padic::from_integer(p, k + 1, 64);
        if (k + 1 > n)
            r.charge_ledger(t.valuation());
        else
            r.set_coeff(k + 1, t);
    }
    return r;
}

// multiply by w^s, charging coefficients pushed out of the window
inline AnnulusElement shift_power(const AnnulusElement& f, long s) {
    long n = f.order();
    AnnulusElement r(f.prime(), n);
    r.charge_ledger(f.drop_ledger());
    for (long k = -n; k <= n; ++k) {
        const Padic& c = f.coeff(k);
        if (c.is_exact_zero()) continue;
        long k2 = k + s;
        if (k2 < -n || k2 > n)
            r.charge_ledger(c.valuation());
        else
            r.set_coeff(k2, c);
    }
    return r;
}

// multiply by a polynomial sum coeffs[j] w^j
inline AnnulusElement mul_poly(const AnnulusElement& f, const std::vector<Padic>& coeffs) {
    long n = f.order();
    AnnulusElement r(f.prime(), n);
    r.charge_ledger(f.drop_ledger());
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_exact_zero()) continue;
        for (long k = -n; k <= n; ++k) {
            const Padic& c = f.coeff(k);
            if (c.is_exact_zero()) continue;
            long k2 = k + static_cast<long>(j);
            if (k2 > n)
                r.charge_ledger((c * coeffs[j]).valuation());
            else
                r.set_coeff(k2, r.coeff(k2) + c * coeffs[j]);
        }
    }
    return r;
}

// divide by (w+1) in the disk-side convention: g_k + g_{k-1} = f_k, solved
// upward from the bottom of the window
inline AnnulusElement div_w_plus_1(const AnnulusElement& f) {
    long n = f.order();
    AnnulusElement r(f.prime(), n);
    r.charge_ledger(f.drop_ledger());
    Padic prev = Padic::zero(f.prime());
    for (long k = -n; k <= n; ++k) {
        Padic g = f.coeff(k) - prev;
        r.set_coeff(k, g);
        prev = g;
    }
    return r;
}

// divide by 1 + sum h[i] w^{-i} (i = 1..d), solved downward from the top
inline AnnulusElement div_one_plus_uh(const AnnulusElement& f, const std::vector<Padic>& h) {
    long n = f.order();
    AnnulusElement r(f.prime(), n);
    r.charge_ledger(f.drop_ledger());
    for (long k = n; k >= -n; --k) {
        Padic g = f.coeff(k);
        for (size_t i = 1; i < h.size(); ++i) {
            long k2 = k + static_cast<long>(i);
            if (k2 > n) continue;
            g = g - h[i] * r.coeff(k2);
        }
        r.set_coeff(k, g);
    }
    return r;
}

// dt/t on the annulus: (w+1)^{-1} dw
inline AnnulusForm omega0(long p, long order, long prec) {
    FormLaurentData d;
    d.t_coeffs[0] = 1;
    return recenter(d, p, order, prec);
}

// dt/(t-1) on the annulus: dw/w  (f = t/(t-1) = 1 + u)
inline AnnulusForm omega1(long p, long order, long prec) {
    FormLaurentData d;
    d.t_coeffs[0] = 1;
    d.u_coeffs[1] = 1;
    return recenter(d, p, order, prec);
}

// p t^{p-1} dt / (t^p - 1), the Frobenius pullback of dt/(t-1), expanded on
// the circle |w| = 1 (all p-th roots of unity sit inside the removed disk,
// so the expansion runs in powers of u = 1/w and its residue there is p):
//   omega1' = p (w+1)^{p-1} u^p (1 + h(u))^{-1} dw,
//   h(u) = sum_{m=1}^{p-1} binom(p, p-m) u^m.
inline AnnulusForm omega1prime(long p, long order, long prec) {
    long n = order;
    // integer recurrence for (1 + h)^{-1} up to u^(2n)
    std::vector<mpz_class> h(p, 0);
    for (long m = 1; m <= p - 1; ++m) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), p, p - m);
        h[m] = b;
    }
    std::vector<mpz_class> inv(2 * n + 1, 0);
    inv[0] = 1;
    for (long m = 1; m <= 2 * n; ++m) {
        mpz_class s = 0;
        for (long i = 1; i <= std::min<long>(m, p - 1); ++i) s += h[i] * inv[m - i];
        inv[m] = -s;
    }
    AnnulusElement base(p, n);
    long dropped = kInfValuation;
    for (long m = 0; m <= 2 * n; ++m) {
        if (inv[m] == 0) continue;
        if (m <= n)
            base.set_coeff(-m, Padic::from_integer(p, inv[m], prec));
        else
            dropped = std::min(dropped, val_p(inv[m], p));
    }
    base.charge_ledger(dropped);
    // shift by u^p and multiply by p (w+1)^{p-1}
    AnnulusElement poly(p, n);
    mpz_class binom = 1;
    for (long j = 0; j <= p - 1 && j <= n; ++j) {
        poly.set_coeff(j, Padic::from_integer(p, p * binom, prec));
        binom = binom * (p - 1 - j) / (j + 1);
    }
    AnnulusElement shift(p, n);
    shift.set_coeff(-p, Padic::from_integer(p, 1, prec));
    return AnnulusForm{base * shift * poly};
}

// evaluate at w = x - 1 with |x - 1| = 1; the result's absolute precision is
// capped at the band estimate of the series (tail policy)
inline Padic evaluate_annulus(const AnnulusElement& f, const Padic& x,
                              std::optional<long> declared_half_weight = std::nullopt) {
    (void)declared_half_weight;  // decay is measured, not assumed
    long p = f.prime();
    Padic w0 = x - Padic::from_integer(p, 1, 64);
    if (w0.is_zero() || w0.valuation() != 0) throw bad_reduction("evaluate_annulus: |x-1| != 1");
    if (!x.is_zero() && x.valuation() < 0) throw bad_reduction("evaluate_annulus: |x| > 1");
    Padic pos = Padic::zero(p);
    for (long k = f.order(); k >= 1; --k) pos = (pos + f.coeff(k)) * w0;
    Padic winv = w0.inverse();
    Padic neg = Padic::zero(p);
    for (long k = -f.order(); k <= -1; ++k) neg = (neg + f.coeff(k)) * winv;
    Padic val = pos + neg + f.coeff(0);
    return cap_absolute(val, f.band_estimate());
}

}  // namespace padlog
