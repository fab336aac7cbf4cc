#pragma once

// Free-algebra combinatorics over a graded alphabet: shuffle products,
// Lyndon words with standard bracketings, and the Radford decomposition of
// the shuffle algebra as a polynomial algebra on Lyndon words.  Everything is
// exact over Q and sized for half-weights <= 5.

#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "padlog/padic.hpp"

namespace padlog {

using AWord = std::vector<int>;  // letter indices into a graded alphabet

struct GradedAlphabet {
    std::vector<long> letter_weights;  // weight of letter i, each >= 1

    long weight(const AWord& w) const {
        long s = 0;
        for (int c : w) s += letter_weights.at(static_cast<size_t>(c));
        return s;
    }
    size_t size() const { return letter_weights.size(); }
};

inline std::map<AWord, long> shuffle_awords(const AWord& u, const AWord& v) {
    std::map<AWord, long> out;
    if (u.empty()) return {{v, 1}};
    if (v.empty()) return {{u, 1}};
    AWord utail(u.begin() + 1, u.end()), vtail(v.begin() + 1, v.end());
    for (auto& [w, m] : shuffle_awords(utail, v)) {
        AWord z{u[0]};
        z.insert(z.end(), w.begin(), w.end());
        out[z] += m;
    }
    for (auto& [w, m] : shuffle_awords(u, vtail)) {
        AWord z{v[0]};
        z.insert(z.end(), w.begin(), w.end());
        out[z] += m;
    }
    return out;
}

inline std::vector<AWord> all_awords_of_weight(const GradedAlphabet& A, long weight) {
    std::vector<AWord> out;
    if (weight == 0) {
        out.push_back({});
        return out;
    }
    for (int c = 0; c < static_cast<int>(A.size()); ++c) {
        long lw = A.letter_weights[static_cast<size_t>(c)];
        if (lw > weight) continue;
        for (auto& tail : all_awords_of_weight(A, weight - lw)) {
            AWord w{c};
            w.insert(w.end(), tail.begin(), tail.end());
            out.push_back(std::move(w));
        }
    }
    return out;
}

// strictly smaller than every proper suffix
inline bool is_lyndon(const AWord& w) {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        AWord suffix(w.begin() + static_cast<long>(i), w.end());
        if (!(w < suffix)) return false;
    }
    return true;
}

inline std::vector<AWord> lyndon_words(const GradedAlphabet& A, long max_weight) {
    std::vector<AWord> out;
    for (long n = 1; n <= max_weight; ++n)
        for (auto& w : all_awords_of_weight(A, n))
            if (is_lyndon(w)) out.push_back(w);
    return out;
}

// standard factorization bracketing of a Lyndon word, expanded in the free
// associative algebra: [u, v] = uv - vu with v the longest proper Lyndon
// suffix
inline std::map<AWord, mpq_class> bracket_expansion(const AWord& w) {
    std::map<AWord, mpq_class> out;
    if (w.size() == 1) {
        out[w] = 1;
        return out;
    }
    // longest proper suffix that is Lyndon
    size_t split = 1;
    for (size_t i = 1; i < w.size(); ++i) {
        AWord suffix(w.begin() + static_cast<long>(i), w.end());
        if (is_lyndon(suffix)) {
            split = i;
            break;
        }
    }
    AWord u(w.begin(), w.begin() + static_cast<long>(split));
    AWord v(w.begin() + static_cast<long>(split), w.end());
    auto eu = bracket_expansion(u), ev = bracket_expansion(v);
    for (auto& [a, ca] : eu)
        for (auto& [b, cb] : ev) {
            AWord ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            AWord ba = b;
            ba.insert(ba.end(), a.begin(), a.end());
            out[ab] += ca * cb;
            out[ba] -= ca * cb;
            if (out[ab] == 0) out.erase(ab);
            if (out.count(ba) && out[ba] == 0) out.erase(ba);
        }
    return out;
}

using LyndonMonomial = std::vector<AWord>;  // sorted multiset of Lyndon words

// Radford: the shuffle algebra is the polynomial algebra on Lyndon words.
// decompose() expresses a word as a polynomial in Lyndon words; all data per
// (alphabet, weight) is solved once and cached.
class ShuffleDecomposer {
  public:
    explicit ShuffleDecomposer(GradedAlphabet a) : alphabet_(std::move(a)) {}

    const std::map<LyndonMonomial, mpq_class>& decompose(const AWord& w) {
        std::lock_guard<std::mutex> lock(mu_);
        long n = alphabet_.weight(w);
        build(n);
        return table_.at(w);
    }

    // monomials of Lyndon words of the given total weight
    std::vector<LyndonMonomial> monomials_of_weight(long n) {
        std::lock_guard<std::mutex> lock(mu_);
        return monomials_unlocked(n);
    }

  private:
    std::vector<LyndonMonomial> monomials_unlocked(long n) {
        std::vector<LyndonMonomial> out;
        auto lw = lyndon_words(alphabet_, n);
        // multisets over lw with weight n, nondecreasing index chains
        std::function<void(size_t, LyndonMonomial&, long)> rec = [&](size_t i, LyndonMonomial& acc,
                                                                     long rem) {
            if (rem == 0) {
                out.push_back(acc);
                return;
            }
            for (size_t j = i; j < lw.size(); ++j) {
                long wj = alphabet_.weight(lw[j]);
                if (wj > rem) continue;
                acc.push_back(lw[j]);
                rec(j, acc, rem - wj);
                acc.pop_back();
            }
        };
        LyndonMonomial acc;
        rec(0, acc, n);
        return out;
    }

    void build(long n) {
        if (built_.count(n)) return;
        for (long m = 1; m < n; ++m) build(m);
        auto words = all_awords_of_weight(alphabet_, n);
        auto monos = monomials_unlocked(n);
        if (words.size() != monos.size())
            throw error("shuffle decomposition: dimension mismatch");
        size_t d = words.size();
        std::map<AWord, size_t> windex;
        for (size_t i = 0; i < d; ++i) windex[words[i]] = i;
        // expansion matrix: column j = shuffle expansion of monomial j
        std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d, 0));
        for (size_t j = 0; j < d; ++j) {
            std::map<AWord, mpq_class> exp{{AWord{}, 1}};
            for (const AWord& f : monos[j]) {
                std::map<AWord, mpq_class> next;
                for (auto& [w, c] : exp)
                    for (auto& [sw, m] : shuffle_awords(w, f)) next[sw] += c * m;
                exp = std::move(next);
            }
            for (auto& [w, c] : exp) M[windex.at(w)][j] = c;
        }
        // invert: solve M * X = I, store row decompositions
        std::vector<std::vector<mpq_class>> inv = invert(M);
        for (size_t i = 0; i < d; ++i) {
            std::map<LyndonMonomial, mpq_class> dec;
            for (size_t j = 0; j < d; ++j)
                if (inv[j][i] != 0) dec[monos[j]] = inv[j][i];
            table_[words[i]] = std::move(dec);
        }
        built_.insert(n);
    }

    static std::vector<std::vector<mpq_class>> invert(std::vector<std::vector<mpq_class>> M) {
        size_t d = M.size();
        std::vector<std::vector<mpq_class>> I(d, std::vector<mpq_class>(d, 0));
        for (size_t i = 0; i < d; ++i) I[i][i] = 1;
        for (size_t col = 0; col < d; ++col) {
            size_t piv = col;
            while (piv < d && M[piv][col] == 0) ++piv;
            if (piv == d) throw error("shuffle decomposition: singular expansion matrix");
            std::swap(M[piv], M[col]);
            std::swap(I[piv], I[col]);
            mpq_class s = M[col][col];
            for (size_t j = 0; j < d; ++j) {
                M[col][j] /= s;
                I[col][j] /= s;
            }
            for (size_t r = 0; r < d; ++r) {
                if (r == col || M[r][col] == 0) continue;
                mpq_class f = M[r][col];
                for (size_t j = 0; j < d; ++j) {
                    M[r][j] -= f * M[col][j];
                    I[r][j] -= f * I[col][j];
                }
            }
        }
        return I;
    }

    GradedAlphabet alphabet_;
    std::mutex mu_;
    std::map<AWord, std::map<LyndonMonomial, mpq_class>> table_;
    std::set<long> built_;
};

}  // namespace padlog
