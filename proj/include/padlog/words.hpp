#pragma once

// Words in {e0, e1}, formal iterated-integral symbols, and the reduced
// Goncharov coproduct.
//
// Symbols are kept in Goncharov order: I(a; c_1, ..., c_n; b) lists c_1
// nearest the basepoint a.  The canonical universe has basepoint 1_0 (the
// tangent vector 1 at 0) and endpoint either a rational x outside {0,1} or
// -1_1 (tangent vector -1 at 1, giving zeta symbols).  Formal integrands are
// rational combinations of monomials in such symbols, homogeneous in
// half-weight.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padlog/free_algebra.hpp"
#include "padlog/padic.hpp"

namespace padlog {

struct Word {
    std::vector<uint8_t> letters;  // 0 = e0, 1 = e1

    Word() = default;
    explicit Word(std::vector<uint8_t> l) : letters(std::move(l)) {}
    static Word parse(const std::string& s) {
        Word w;
        for (char c : s) {
            if (c == '0')
                w.letters.push_back(0);
            else if (c == '1')
                w.letters.push_back(1);
            else if (c == ',' || c == ' ')
                continue;
            else
                throw error("bad word letter: " + std::string(1, c));
        }
        return w;
    }

    long weight() const { return static_cast<long>(letters.size()); }
    long wt0() const { return static_cast<long>(std::count(letters.begin(), letters.end(), 0)); }
    long wt1() const { return static_cast<long>(std::count(letters.begin(), letters.end(), 1)); }
    bool empty() const { return letters.empty(); }

    Word reversed() const {
        Word w = *this;
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
    }
    Word swapped() const {  // e0 <-> e1
        Word w = *this;
        for (auto& c : w.letters) c ^= 1;
        return w;
    }
    Word prefix(long k) const { return Word({letters.begin(), letters.begin() + k}); }
    Word suffix_from(long k) const { return Word({letters.begin() + k, letters.end()}); }

    friend Word operator+(const Word& a, const Word& b) {
        Word w = a;
        w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
        return w;
    }

    auto operator<=>(const Word&) const = default;

    std::string str() const {
        std::string s;
        for (auto c : letters) s += static_cast<char>('0' + c);
        return s.empty() ? "e" : s;
    }
};

// all interleavings with multiplicity; |u shuffle v| = C(|u|+|v|, |u|)
inline std::map<Word, long> shuffle(const Word& u, const Word& v) {
    std::map<Word, long> out;
    if (u.empty()) {
        out[v] = 1;
        return out;
    }
    if (v.empty()) {
        out[u] = 1;
        return out;
    }
    auto a = shuffle(u.suffix_from(1), v);
    for (auto& [w, m] : a) out[Word({u.letters[0]}) + w] += m;
    auto b = shuffle(u, v.suffix_from(1));
    for (auto& [w, m] : b) out[Word({v.letters[0]}) + w] += m;
    return out;
}

inline std::optional<Word> left_divide(const Word& w, const Word& prefix) {
    if (prefix.weight() > w.weight()) return std::nullopt;
    if (!std::equal(prefix.letters.begin(), prefix.letters.end(), w.letters.begin()))
        return std::nullopt;
    return w.suffix_from(prefix.weight());
}

inline std::optional<Word> right_divide(const Word& w, const Word& suffix) {
    if (suffix.weight() > w.weight()) return std::nullopt;
    if (!std::equal(suffix.letters.rbegin(), suffix.letters.rend(), w.letters.rbegin()))
        return std::nullopt;
    return w.prefix(w.weight() - suffix.weight());
}

// ---------------------------------------------------------------------------
// symbols and formal integrands

struct Endpoint {
    enum class Kind : uint8_t { tangent0, tangent1, point };
    Kind kind = Kind::tangent0;
    mpq_class x;  // meaningful for point only

    static Endpoint tangent0() { return {Kind::tangent0, 0}; }
    static Endpoint tangent1() { return {Kind::tangent1, 0}; }
    static Endpoint at(const mpq_class& q) {
        // 0 and 1 alias to the fixed tangential basepoints
        if (q == 0) return tangent0();
        if (q == 1) return tangent1();
        return {Kind::point, q};
    }
    static Endpoint letter(uint8_t c) { return c ? tangent1() : tangent0(); }

    friend bool operator==(const Endpoint& a, const Endpoint& b) {
        if (a.kind != b.kind) return false;
        return a.kind != Kind::point || a.x == b.x;
    }
    friend bool operator<(const Endpoint& a, const Endpoint& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == Kind::point && a.x < b.x;
    }
};

// canonical symbol: I(1_0; word; x) or I(1_0; word; -1_1) (= zeta(word))
struct IISymbol {
    Word word;
    bool is_zeta = false;
    mpq_class x;  // endpoint when !is_zeta; numerators of x and 1-x nonzero

    long weight() const { return word.weight(); }

    friend bool operator<(const IISymbol& a, const IISymbol& b) {
        return std::tie(a.is_zeta, a.word, a.x) < std::tie(b.is_zeta, b.word, b.x);
    }
    friend bool operator==(const IISymbol& a, const IISymbol& b) {
        return a.is_zeta == b.is_zeta && a.word == b.word && a.x == b.x;
    }

    std::string str() const {
        std::string letters;
        for (size_t i = 0; i < word.letters.size(); ++i) {
            if (i) letters += ",";
            letters += static_cast<char>('0' + word.letters[i]);
        }
        if (is_zeta) return "zeta(" + letters + ")";
        return "I(1_0; " + letters + "; " + mpq_class(x).get_str() + ")";
    }
};

using Monomial = std::vector<IISymbol>;  // kept sorted

inline long monomial_weight(const Monomial& m) {
    long w = 0;
    for (const auto& s : m) w += s.weight();
    return w;
}

inline std::string monomial_str(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += "*";
        s += m[i].str();
    }
    return s;
}

class FormalIntegrand {
  public:
    FormalIntegrand() = default;
    explicit FormalIntegrand(const mpq_class& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    static FormalIntegrand symbol(IISymbol s, const mpq_class& c = 1) {
        FormalIntegrand f;
        if (c != 0) f.terms_[Monomial{std::move(s)}] = c;
        return f;
    }
    static FormalIntegrand monomial(Monomial m, const mpq_class& c = 1) {
        std::sort(m.begin(), m.end());
        FormalIntegrand f;
        if (c != 0) f.terms_[std::move(m)] = c;
        return f;
    }

    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // homogeneous half-weight; 0 for scalars and the zero integrand
    long weight() const { return terms_.empty() ? 0 : monomial_weight(terms_.begin()->first); }

    void add_term(const Monomial& m, const mpq_class& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend FormalIntegrand operator+(const FormalIntegrand& a, const FormalIntegrand& b) {
        FormalIntegrand r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend FormalIntegrand operator-(const FormalIntegrand& a, const FormalIntegrand& b) {
        return a + (b * mpq_class(-1));
    }
    friend FormalIntegrand operator*(const FormalIntegrand& a, const mpq_class& c) {
        FormalIntegrand r;
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_[m] = k * c;
        return r;
    }
    friend FormalIntegrand operator*(const mpq_class& c, const FormalIntegrand& a) { return a * c; }
    friend FormalIntegrand operator*(const FormalIntegrand& a, const FormalIntegrand& b) {
        FormalIntegrand r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend bool operator==(const FormalIntegrand& a, const FormalIntegrand& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str() << "*" << monomial_str(m);
        }
        return os.str();
    }

  private:
    std::map<Monomial, mpq_class> terms_;
};

inline ShuffleDecomposer& binary_decomposer() {
    static ShuffleDecomposer d(GradedAlphabet{{1, 1}});
    return d;
}

// Rewrites a generalized symbol I(a; w; b) into the canonical universe.
// Rules: empty word -> 1; equal endpoints -> 0; path reversal; path
// composition through 1_0; I(1_0; e0^k; x) -> (1/k!) log-symbol^k; zeta
// symbols are reduced modulo the shuffle ideal (zeta(0), zeta(1)), leaving
// polynomials in zeta symbols on Lyndon words of weight >= 2.
inline FormalIntegrand normalize(const Endpoint& a, const Word& w, const Endpoint& b) {
    using K = Endpoint::Kind;
    if (w.empty()) return FormalIntegrand(1);
    if (a == b) return FormalIntegrand();

    if (a.kind == K::tangent0) {
        if (b.kind == K::point) {
            if (b.x == 0 || b.x == 1) throw error("normalize: endpoint collides with a puncture");
            if (w.wt1() == 0) {
                // I(1_0; e0^k; x) = log-symbol^k / k!
                long k = w.weight();
                IISymbol logsym{Word({0}), false, b.x};
                Monomial m(static_cast<size_t>(k), logsym);
                mpq_class c = 1;
                for (long j = 2; j <= k; ++j) c /= j;
                return FormalIntegrand::monomial(std::move(m), c);
            }
            return FormalIntegrand::symbol(IISymbol{w, false, b.x});
        }
        // b = tangent1: regularized zeta
        AWord aw(w.letters.begin(), w.letters.end());
        FormalIntegrand out;
        for (const auto& [mono, c] : binary_decomposer().decompose(aw)) {
            Monomial m;
            bool dead = false;
            for (const AWord& lw : mono) {
                if (lw.size() == 1) {  // factor zeta(0) or zeta(1) = 0
                    dead = true;
                    break;
                }
                Word lword;
                for (int ch : lw) lword.letters.push_back(static_cast<uint8_t>(ch));
                m.push_back(IISymbol{lword, true, 0});
            }
            if (dead) continue;
            std::sort(m.begin(), m.end());
            out.add_term(m, c);
        }
        return out;
    }

    if (b.kind == K::tangent0) {
        // path reversal: I(a; w; 1_0) = (-1)^n I(1_0; rev w; a)
        FormalIntegrand r = normalize(b, w.reversed(), a);
        return (w.weight() % 2) ? r * mpq_class(-1) : r;
    }

    // compose through 1_0: I(a; w; b) = sum I(a; w1; 1_0) * I(1_0; w2; b)
    FormalIntegrand out;
    for (long k = 0; k <= w.weight(); ++k) {
        FormalIntegrand lhs = normalize(a, w.prefix(k), Endpoint::tangent0());
        if (lhs.is_zero()) continue;
        FormalIntegrand rhs = normalize(Endpoint::tangent0(), w.suffix_from(k), b);
        if (rhs.is_zero()) continue;
        out = out + lhs * rhs;
    }
    return out;
}

// Canonical expanded form: same-endpoint to-point products are shuffled into
// sums of single symbols, so shuffle-equivalent integrands compare equal.
// Zeta symbols already form a polynomial basis (Lyndon words) and pass
// through; products across distinct endpoints remain formal monomials.
inline FormalIntegrand shuffle_flatten(const FormalIntegrand& f) {
    FormalIntegrand out;
    for (const auto& [mono, coeff] : f.terms()) {
        std::map<mpq_class, std::map<Word, mpq_class>> groups;  // by endpoint x
        Monomial zetas;
        for (const auto& s : mono) {
            if (s.is_zeta) {
                zetas.push_back(s);
                continue;
            }
            auto& acc = groups[s.x];
            if (acc.empty()) {
                acc[s.word] = 1;
            } else {
                std::map<Word, mpq_class> next;
                for (const auto& [w, c] : acc)
                    for (const auto& [sw, m] : shuffle(w, s.word)) next[sw] += c * m;
                acc = std::move(next);
            }
        }
        // distribute the cross-group product
        std::vector<std::pair<Monomial, mpq_class>> partial{{zetas, coeff}};
        for (const auto& [x, acc] : groups) {
            std::vector<std::pair<Monomial, mpq_class>> next;
            for (const auto& [m, c] : partial)
                for (const auto& [w, cw] : acc) {
                    if (cw == 0) continue;
                    Monomial m2 = m;
                    m2.push_back(IISymbol{w, false, x});
                    next.emplace_back(std::move(m2), c * cw);
                }
            partial = std::move(next);
        }
        for (auto& [m, c] : partial) {
            std::sort(m.begin(), m.end());
            out.add_term(m, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Goncharov coproduct

// flattened tensor: (left monomial, right monomial) -> coefficient
using TensorFI = std::map<std::pair<Monomial, Monomial>, mpq_class>;

inline void tensor_add(TensorFI& t, const Monomial& l, const Monomial& r, const mpq_class& c) {
    if (c == 0) return;
    auto key = std::make_pair(l, r);
    auto it = t.find(key);
    if (it == t.end()) {
        t[key] = c;
    } else {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

inline void tensor_accumulate(TensorFI& t, const FormalIntegrand& l, const FormalIntegrand& r,
                              const mpq_class& c) {
    for (const auto& [ml, cl] : l.terms())
        for (const auto& [mr, cr] : r.terms()) tensor_add(t, ml, mr, c * cl * cr);
}

inline TensorFI tensor_flatten(const TensorFI& t) {
    TensorFI out;
    for (const auto& [lr, c] : t)
        tensor_accumulate(out, shuffle_flatten(FormalIntegrand::monomial(lr.first)),
                          shuffle_flatten(FormalIntegrand::monomial(lr.second)), c);
    return out;
}

// full coproduct of a canonical symbol via Goncharov's subsequence formula;
// includes the trivial terms s (x) 1 and 1 (x) s
inline TensorFI goncharov_full_symbol(const IISymbol& s) {
    const auto& letters = s.word.letters;
    long n = s.word.weight();
    Endpoint right = s.is_zeta ? Endpoint::tangent1() : Endpoint::at(s.x);
    TensorFI out;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<long> idx;
        for (long i = 0; i < n; ++i)
            if (mask & (1ul << i)) idx.push_back(i);
        // main term: the chosen subsequence, same endpoints
        Word sub;
        for (long i : idx) sub.letters.push_back(letters[static_cast<size_t>(i)]);
        FormalIntegrand main = normalize(Endpoint::tangent0(), sub, right);
        if (main.is_zero()) continue;
        // gap terms between consecutive chosen letters
        FormalIntegrand gaps(1);
        long prev = -1;
        Endpoint prev_ep = Endpoint::tangent0();
        for (size_t q = 0; q <= idx.size(); ++q) {
            long next = (q < idx.size()) ? idx[q] : n;
            Endpoint next_ep =
                (q < idx.size()) ? Endpoint::letter(letters[static_cast<size_t>(next)]) : right;
            Word gap;
            for (long i = prev + 1; i < next; ++i) gap.letters.push_back(letters[static_cast<size_t>(i)]);
            if (!gap.empty()) {
                gaps = gaps * normalize(prev_ep, gap, next_ep);
                if (gaps.is_zero()) break;
            }
            prev = next;
            prev_ep = next_ep;
        }
        if (gaps.is_zero()) continue;
        tensor_accumulate(out, main, gaps, 1);
    }
    return out;
}

inline TensorFI goncharov_full_monomial(const Monomial& m) {
    TensorFI acc;
    tensor_add(acc, Monomial{}, Monomial{}, 1);
    for (const auto& s : m) {
        TensorFI f = goncharov_full_symbol(s);
        TensorFI next;
        for (const auto& [ab, c1] : acc)
            for (const auto& [lr, c2] : f) {
                Monomial l = ab.first, r = ab.second;
                l.insert(l.end(), lr.first.begin(), lr.first.end());
                r.insert(r.end(), lr.second.begin(), lr.second.end());
                std::sort(l.begin(), l.end());
                std::sort(r.begin(), r.end());
                tensor_add(next, l, r, c1 * c2);
            }
        acc = std::move(next);
    }
    return acc;
}

inline TensorFI goncharov_full(const FormalIntegrand& f) {
    TensorFI out;
    for (const auto& [m, c] : f.terms()) {
        TensorFI t = goncharov_full_monomial(m);
        for (const auto& [lr, k] : t) tensor_add(out, lr.first, lr.second, c * k);
    }
    return out;
}

// reduced coproduct: both tensor weights >= 1
inline TensorFI goncharov_reduced_coproduct(const FormalIntegrand& f) {
    TensorFI full = goncharov_full(f);
    TensorFI out;
    for (const auto& [lr, c] : full) {
        if (monomial_weight(lr.first) == 0 || monomial_weight(lr.second) == 0) continue;
        tensor_add(out, lr.first, lr.second, c);
    }
    return out;
}

// the (l, m) bidegree component
inline TensorFI bidegree_component(const TensorFI& t, long l, long m) {
    TensorFI out;
    for (const auto& [lr, c] : t)
        if (monomial_weight(lr.first) == l && monomial_weight(lr.second) == m)
            tensor_add(out, lr.first, lr.second, c);
    return out;
}

}  // namespace padlog
