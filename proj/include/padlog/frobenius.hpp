#pragma once

// The Frobenius-structure engine for p-adic multiple polylogarithms on
// P^1 minus {0,1,inf}, good reduction, Frobenius lift t -> t^p.
//
// Sign conventions (pinned by the Li_1 oracle and the shuffle suite):
//   omega0 = dt/t, omega1 = dt/(t-1), omega1' = p t^(p-1) dt/(t^p - 1);
//   the KZ connection acts by W -> e0 W dt/t + e1 W dt/(1-t), so the e1-step
//     of the epsilon-coefficient recursion carries -1 against (t-1)^(j+1);
//   li(x, T) = (-1)^(wt0 T) v_T, where v solves the unsigned fixed-point
//     system v_empty = 1, (1 - p^wt T) v_T = sum eps_U L_{W'} tau^V_W v_V;
//   zeta(T, y) = sum_{T = A B} li(1-y, reverse(swap(A))) li(y, B).
//
// Word convention: the first letter of an engine word sits nearest the
// endpoint, so Li_k(x) = li(x, e0^(k-1) e1).
//
// tau_W is defined as the unique constant cancelling the residue of the
// right-hand side of dL_W; this reproduces tau(e0) = p e0 and
// tau(e1) = p e1 + higher weight.

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "padlog/series.hpp"
#include "padlog/words.hpp"

namespace padlog {

struct EngineParams {
    long p;
    long wmax;
    long order;  // geometric truncation N
    long prec;   // requested relative precision r

    auto operator<=>(const EngineParams&) const = default;
};

inline long default_order(long p, long prec) { return p * prec; }

inline long default_kmax(long p, long prec, long wmax) {
    // tail of epsilon: v(term at level k) >= k - (k-1)/(p-1); aim past
    // prec + wmax guard digits
    long target = prec + wmax + 2;
    long k = (p == 2) ? 4 * target : (target * (p - 1) + (p - 3)) / (p - 2);
    return k + 2;
}

class PolylogEngine {
  public:
    explicit PolylogEngine(EngineParams par) : par_(par) {
        if (!is_prime_long(par_.p)) throw error("engine: p must be prime");
        long guard = 4;
        for (long t = par_.order + 1; t >= 1; t /= par_.p) ++guard;
        wprec_ = par_.prec + guard;
        kmax_ = default_kmax(par_.p, par_.prec, par_.wmax);
        build_forms();
        build_tau_and_L();
        build_epsilon_coefficients();
        build_tau_on_words();
    }

    const EngineParams& params() const { return par_; }
    long kmax() const { return kmax_; }
    long working_precision() const { return wprec_; }

    const Padic& tau(const Word& w) const {
        auto it = tau_.find(w);
        if (it == tau_.end()) throw error("tau: word beyond engine weight");
        return it->second;
    }
    const AnnulusElement& L(const Word& w) const {
        auto it = L_.find(w);
        if (it == L_.end()) throw error("L: word beyond engine weight");
        return it->second;
    }

    // tau^V_W for V an ordered subsequence of W (multiplicative extension)
    const std::map<Word, Padic>& tau_on_word(const Word& v) const {
        auto it = tau_words_.find(v);
        if (it == tau_words_.end()) throw error("tau_on_word: weight overflow");
        return it->second;
    }

    mpq_class c_coefficient(long i, long j, const Word& w) const {
        auto it = c_by_word_.find(w);
        if (it == c_by_word_.end()) return 0;
        for (const auto& [i2, j2, c] : it->second)
            if (i2 == i && j2 == j) return c;
        return 0;
    }

    // eps_W(x) = sum c_{i,j,W} (x^p - x)^(i+j) / (x^i (x-1)^j)
    Padic epsilon(const Padic& x, const Word& w) const {
        check_point(x);
        PointPowers pw = point_powers(x);
        return epsilon_with(pw, w);
    }

    // solves the triangular fixed-point system at x for all words of weight
    // <= cap and returns the signed values li(x, .)
    std::map<Word, Padic> li_table(const Padic& x, long cap) const {
        if (cap > par_.wmax) throw error("li: word beyond engine weight");
        check_point(x);
        PointPowers pw = point_powers(x);
        std::map<Word, Padic> Lval, eps, v;
        for (long m = 0; m <= cap; ++m)
            for (const auto& w : words_of_weight(m)) {
                Lval[w] = evaluate_annulus(L(w), x);
                eps[w] = epsilon_with(pw, w);
            }
        v[Word{}] = one();
        for (long m = 1; m <= cap; ++m) {
            for (const auto& t : words_of_weight(m)) {
                Padic sum = Padic::zero(par_.p);
                long n = t.weight();
                for (long a = 0; a <= n; ++a) {
                    for (long b = a; b <= n; ++b) {
                        // t = U . Wp . Wm with U = t[0,a), Wp = t[a,b), Wm = t[b,n)
                        const Padic& epsU = eps.at(t.prefix(a));
                        const Padic& LWp = Lval.at(t.suffix_from(a).prefix(b - a));
                        Word Wm = t.suffix_from(b);
                        for (const auto& [V, tVW] : tau_by_super_.at(Wm)) {
                            if (a == 0 && b == 0 && V == t) continue;  // V != T
                            sum = sum + epsU * LWp * tVW * v.at(V);
                        }
                    }
                }
                mpz_class unit = 1 - pow_p(par_.p, n);
                v[t] = sum / Padic::from_integer(par_.p, unit, wprec_);
            }
        }
        std::map<Word, Padic> out;
        for (auto& [w, val] : v)
            out[w] = (w.wt0() % 2) ? -val : val;
        return out;
    }

    Padic li(const Padic& x, const Word& t) const {
        return li_table(x, t.weight()).at(t);
    }

    // zeta via path composition through the auxiliary good-reduction point y
    Padic zeta(const Word& w, const Padic& y) const {
        check_point(y);
        Padic oney = one() - y;
        check_point(oney);
        auto at_y = li_table(y, w.weight());
        auto at_1my = li_table(oney, w.weight());
        Padic sum = Padic::zero(par_.p);
        for (long k = 0; k <= w.weight(); ++k) {
            Word A = w.prefix(k), B = w.suffix_from(k);
            sum = sum + at_1my.at(A.swapped().reversed()) * at_y.at(B);
        }
        return sum;
    }

    static const std::vector<Word>& words_of_weight(long m) {
        static std::mutex mu;
        static std::map<long, std::vector<Word>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        std::vector<Word> out;
        for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
            Word w;
            for (long i = 0; i < m; ++i) w.letters.push_back((mask >> i) & 1);
            out.push_back(w);
        }
        return cache[m] = std::move(out);
    }

  private:
    Padic one() const { return Padic::from_integer(par_.p, 1, wprec_); }

    void check_point(const Padic& x) const {
        if (x.prime() != par_.p) throw prime_mismatch();
        if (x.is_zero() || x.valuation() != 0 || (x - one()).valuation() != 0)
            throw bad_reduction("polylog arguments need |x| = |x-1| = 1");
    }

    void build_forms() {
        w0_ = std::make_unique<AnnulusForm>(omega0(par_.p, par_.order, wprec_));
        w1_ = std::make_unique<AnnulusForm>(omega1(par_.p, par_.order, wprec_));
        w1p_ = std::make_unique<AnnulusForm>(omega1prime(par_.p, par_.order, wprec_));
    }

    void build_tau_and_L() {
        long p = par_.p;
        L_[Word{}] = AnnulusElement::one(p, par_.order, wprec_);
        tau_[Word{}] = one();  // tau(1) = 1 (never used in the recursion)
        Word e0 = Word({0}), e1 = Word({1});
        for (long m = 1; m <= par_.wmax; ++m) {
            for (const auto& w : words_of_weight(m)) {
                AnnulusElement rhs(p, par_.order);
                // p (L_{W/e0} - L_{e0\W}) omega0
                auto r0 = right_divide(w, e0);
                auto l0 = left_divide(w, e0);
                AnnulusElement diff(p, par_.order);
                if (r0) diff = diff + L_.at(*r0);
                if (l0) diff = diff - L_.at(*l0);
                rhs = rhs + (diff * w0_->f).scaled(Padic::from_integer(p, p, wprec_));
                // sum over proper splits W = W' W'' (wt W'' >= 1): L_{W'} tau_{W''} omega1
                for (long k = 1; k < m; ++k)
                    rhs = rhs + (L_.at(w.prefix(m - k)) * w1_->f).scaled(tau_.at(w.suffix_from(m - k)));
                // - L_{e1\W} omega1'
                auto l1 = left_divide(w, e1);
                if (l1) rhs = rhs - L_.at(*l1) * w1p_->f;
                // tau_W cancels the residue of rhs + tau_W omega1
                Padic t = -res_disk1(AnnulusForm{rhs});
                tau_[w] = t;
                AnnulusElement full = rhs + w1_->f.scaled(t);
                AnnulusElement P = primitive(AnnulusForm{full});
                Padic at0 = evaluate_annulus(P, Padic::zero(p));
                P.set_coeff(0, P.coeff(0) - at0);
                L_[w] = P;
                if (w.wt1() == 0 && !t.bounded_by(par_.prec - 2))
                    throw residue_error("tau on an e0-power failed to vanish");
            }
        }
    }

    void build_epsilon_coefficients() {
        std::map<std::tuple<long, long, Word>, mpq_class> cur;
        cur[{0, 0, Word{}}] = 1;
        c_ = cur;
        for (long k = 0; k < kmax_; ++k) {
            std::map<std::tuple<long, long, Word>, mpq_class> next;
            for (const auto& [key, c] : cur) {
                const auto& [i, j, w] = key;
                mpq_class q = c / (i + j + 1);
                auto add = [&](long i2, long j2, const Word& w2, const mpq_class& v) {
                    if (v == 0) return;
                    auto k2 = std::make_tuple(i2, j2, w2);
                    next[k2] += v;
                    if (next[k2] == 0) next.erase(k2);
                };
                add(i + 1, j, w, -i * q);
                add(i, j + 1, w, -j * q);
                if (w.weight() + 1 <= par_.wmax) {
                    add(i + 1, j, Word({0}) + w, q);
                    add(i, j + 1, Word({1}) + w, -q);
                }
            }
            for (const auto& [key, c] : next) c_[key] = c;
            cur = std::move(next);
        }
    }

    void build_tau_on_words() {
        // tau as a series map on generators: e0 -> p e0, e1 -> tau_1
        std::map<Word, Padic> tau_e0, tau_e1;
        tau_e0[Word({0})] = Padic::from_integer(par_.p, par_.p, wprec_);
        for (long m = 1; m <= par_.wmax; ++m)
            for (const auto& w : words_of_weight(m)) {
                if (w.wt1() == 0) continue;
                if (m == 1) {
                    tau_e1[w] = tau_.at(w);  // = p e1
                } else {
                    tau_e1[w] = tau_.at(w);
                }
            }
        for (long m = 0; m <= par_.wmax; ++m)
            for (const auto& v : words_of_weight(m)) {
                std::map<Word, Padic> acc;
                acc[Word{}] = one();
                for (uint8_t c : v.letters) {
                    const auto& gen = c ? tau_e1 : tau_e0;
                    std::map<Word, Padic> nxt;
                    for (const auto& [w1, c1] : acc)
                        for (const auto& [w2, c2] : gen) {
                            Word w12 = w1 + w2;
                            if (w12.weight() > par_.wmax) continue;
                            auto it = nxt.find(w12);
                            if (it == nxt.end())
                                nxt[w12] = c1 * c2;
                            else
                                it->second = it->second + c1 * c2;
                        }
                    acc = std::move(nxt);
                }
                tau_words_[v] = acc;
            }
        // regroup per superword for the li recursion
        for (long m = 0; m <= par_.wmax; ++m)
            for (const auto& w : words_of_weight(m)) tau_by_super_[w] = {};
        for (const auto& [v, ws] : tau_words_)
            for (const auto& [w, c] : ws) tau_by_super_[w][v] = c;
    }

    EngineParams par_;
    long wprec_;
    long kmax_;
    std::unique_ptr<AnnulusForm> w0_, w1_, w1p_;
    std::map<Word, Padic> tau_;
    std::map<Word, AnnulusElement> L_;
    std::map<Word, std::map<Word, Padic>> tau_words_;    // V -> (W -> tau^V_W)
    std::map<Word, std::map<Word, Padic>> tau_by_super_; // W -> (V -> tau^V_W)
    std::map<std::tuple<long, long, Word>, mpq_class> c_;
};

// shared engine cache keyed on parameters
inline std::shared_ptr<const PolylogEngine> engine_for(EngineParams par) {
    static std::mutex mu;
    static std::map<EngineParams, std::shared_ptr<const PolylogEngine>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(par);
    if (it != cache.end()) return it->second;
    auto e = std::make_shared<const PolylogEngine>(par);
    cache[par] = e;
    return e;
}

inline std::shared_ptr<const PolylogEngine> engine_for(long p, long wmax, long prec) {
    return engine_for(EngineParams{p, wmax, default_order(p, prec), prec});
}

}  // namespace padlog
