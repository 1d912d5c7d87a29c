#include "knothom/skein.hpp"

#include "json.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace knothom {

LaurentAQ LaurentAQ::mono(int ae, int qe, Int c) {
    LaurentAQ p;
    if (c != 0) p.terms[{ae, qe}] = std::move(c);
    return p;
}

void LaurentAQ::add_term(int ae, int qe, const Int& c) {
    if (c == 0) return;
    auto key = std::make_pair(ae, qe);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LaurentAQ LaurentAQ::operator+(const LaurentAQ& o) const {
    LaurentAQ r = *this;
    for (const auto& [k, c] : o.terms) r.add_term(k.first, k.second, c);
    return r;
}

LaurentAQ LaurentAQ::operator-(const LaurentAQ& o) const {
    LaurentAQ r = *this;
    for (const auto& [k, c] : o.terms) r.add_term(k.first, k.second, -c);
    return r;
}

LaurentAQ LaurentAQ::operator*(const LaurentAQ& o) const {
    LaurentAQ r;
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms)
            r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return r;
}

LaurentAQ LaurentAQ::inverted() const {
    LaurentAQ r;
    for (const auto& [k, c] : terms) r.add_term(-k.first, -k.second, c);
    return r;
}

std::string LaurentAQ::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        bool printed = false;
        if (a != 1 || (k.first == 0 && k.second == 0)) {
            os << a.str();
            printed = true;
        }
        if (k.first != 0) {
            if (printed) os << "*";
            os << "a^" << k.first;
            printed = true;
        }
        if (k.second != 0) {
            if (printed) os << "*";
            os << "q^" << k.second;
        }
        first = false;
    }
    return os.str();
}

std::string LaurentAQ::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : terms)
        arr.push_back({{"a", k.first}, {"q", k.second}, {"coeff", c.str()}});
    return arr.dump();
}

RationalAQ RationalAQ::operator+(const RationalAQ& o) const {
    LaurentAQ qq = LaurentAQ::mono(0, 1) - LaurentAQ::mono(0, -1);
    RationalAQ r;
    r.denpow = std::max(denpow, o.denpow);
    LaurentAQ a = num, b = o.num;
    for (int i = denpow; i < r.denpow; ++i) a = a * qq;
    for (int i = o.denpow; i < r.denpow; ++i) b = b * qq;
    r.num = a + b;
    return r;
}

RationalAQ RationalAQ::operator*(const LaurentAQ& f) const { return {num * f, denpow}; }

RationalAQ RationalAQ::operator*(const RationalAQ& o) const {
    return {num * o.num, denpow + o.denpow};
}

LaurentAQ divide_q_qinv(const LaurentAQ& p) {
    // Per a-degree synthetic division from the top q-exponent.
    LaurentAQ quo;
    std::map<int, std::map<int, Int>> bya;
    for (const auto& [k, c] : p.terms) bya[k.first][k.second] = c;
    for (auto& [ae, poly] : bya) {
        long guard = 4 * (long)(poly.size() + 8) + 2 * (long)(poly.rbegin()->first - poly.begin()->first + 4);
        while (!poly.empty()) {
            if (--guard < 0) throw DivisionError("not divisible by (q - q^-1)");
            auto top = std::prev(poly.end());
            int e = top->first;
            Int c = top->second;
            quo.add_term(ae, e - 1, c);
            poly.erase(top);
            auto lo = poly.find(e - 2);
            if (lo == poly.end()) {
                poly.emplace(e - 2, c);
            } else {
                lo->second += c;
                if (lo->second == 0) poly.erase(lo);
            }
        }
    }
    return quo;
}

RationalAQ circle_factor() {
    return {LaurentAQ::mono(1, 0) - LaurentAQ::mono(-1, 0), 1};
}

namespace {

using Word = std::vector<int>;  // signed generator indices

struct SimpleForm {
    Word word;
    int strands = 1;
};

/// Cyclic free cancellation, split over unused generator indices (disjoint
/// union), and top Markov destabilization. Returns the residual word list
/// (each on its own strand count) and the accumulated circle multiplicity.
struct Reduction {
    std::vector<SimpleForm> parts;
    int circles = 0;  // extra circle_factor powers
};

void cancel_cyclic(Word& w) {
    bool change = true;
    while (change && !w.empty()) {
        change = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == -w[i + 1]) {
                w.erase(w.begin() + i, w.begin() + i + 2);
                change = true;
                break;
            }
        if (!change && w.size() >= 2 && w.front() == -w.back()) {
            w.erase(w.begin());
            w.pop_back();
            change = true;
        }
    }
}

void reduce_word(Word w, int strands, Reduction& out) {
    while (true) {
        cancel_cyclic(w);
        if (w.empty()) {
            out.circles += strands;  // strands disjoint circles
            return;
        }
        std::vector<bool> used(strands + 1, false);
        int maxi = 0;
        std::vector<int> count(strands + 1, 0);
        for (int x : w) {
            int i = x > 0 ? x : -x;
            used[i] = true;
            maxi = std::max(maxi, i);
            count[i]++;
        }
        // Free top strands.
        if (maxi < strands - 1) {
            out.circles += strands - 1 - maxi;
            strands = maxi + 1;
            continue;
        }
        // Split at an unused inner index.
        int split = -1;
        for (int i = 1; i <= strands - 1; ++i)
            if (!used[i]) {
                split = i;
                break;
            }
        if (split > 0) {
            Word lo, hi;
            for (int x : w) {
                int i = x > 0 ? x : -x;
                if (i < split)
                    lo.push_back(x);
                else
                    hi.push_back(x > 0 ? x - split : x + split);
            }
            reduce_word(std::move(lo), split, out);
            reduce_word(std::move(hi), strands - split, out);
            return;
        }
        // Top destabilization.
        if (count[strands - 1] == 1) {
            Word w2;
            for (int x : w)
                if (x != strands - 1 && x != -(strands - 1)) w2.push_back(x);
            w = std::move(w2);
            strands -= 1;
            continue;
        }
        out.parts.push_back({std::move(w), strands});
        return;
    }
}

Word canonical_rotation(const Word& w) {
    if (w.empty()) return w;
    Word best = w;
    Word cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

int permutation_components(const Word& w, int strands) {
    std::vector<int> pos(strands);
    for (int p = 0; p < strands; ++p) pos[p] = p;
    for (int x : w) {
        int i = (x > 0 ? x : -x) - 1;
        std::swap(pos[i], pos[i + 1]);
    }
    // pos[p] = strand at top position p; components = cycles of s -> top

    std::vector<int> endpos(strands);
    for (int p = 0; p < strands; ++p) endpos[pos[p]] = p;
    std::vector<bool> seen(strands, false);
    int nc = 0;
    for (int s = 0; s < strands; ++s) {
        if (seen[s]) continue;
        ++nc;
        int t = s;
        while (!seen[t]) {
            seen[t] = true;
            t = endpos[t];
        }
    }
    return nc;
}

/// First letter, in closure-traversal order, whose first encounter is on the
/// under strand; -1 when the diagram is descending.
int first_bad_letter(const Word& w, int strands) {
    const int n = (int)w.size();
    std::vector<bool> seen(n, false);
    std::vector<bool> comp_done(strands, false);
    for (int p0 = 0; p0 < strands; ++p0) {
        if (comp_done[p0]) continue;
        int pos = p0, h = 0;
        comp_done[p0] = true;
        long guard = 4L * n * strands + 2L * strands + 4;
        while (true) {
            if (--guard < 0) throw std::logic_error("braid traversal did not close");
            int t = -1;
            for (int i = h; i < n; ++i) {
                int gi = (w[i] > 0 ? w[i] : -w[i]) - 1;
                if (pos == gi || pos == gi + 1) {
                    t = i;
                    break;
                }
            }
            if (t < 0) {
                // Top of the braid: wrap through the closure arc.
                if (pos == p0 && h > 0) break;
                if (pos == p0 && h == 0) break;  // crossing-free circle
                comp_done[pos] = true;
                h = 0;
                continue;
            }
            int gi = (w[t] > 0 ? w[t] : -w[t]) - 1;
            if (!seen[t]) {
                seen[t] = true;
                bool over = (w[t] > 0) == (pos == gi);
                if (!over) return t;
            }
            pos = (pos == gi) ? gi + 1 : gi;
            h = t + 1;
        }
    }
    return -1;
}

std::map<std::pair<Word, int>, RationalAQ>& memo() {
    static std::map<std::pair<Word, int>, RationalAQ> m;
    return m;
}
std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

RationalAQ homfly_rational(Word w, int strands);

RationalAQ homfly_of_part(const SimpleForm& part) {
    Word key = canonical_rotation(part.word);
    {
        std::lock_guard<std::mutex> lk(memo_mutex());
        auto it = memo().find({key, part.strands});
        if (it != memo().end()) return it->second;
    }
    RationalAQ r;
    int bad = first_bad_letter(part.word, part.strands);
    if (bad < 0) {
        int m = permutation_components(part.word, part.strands);
        r = {LaurentAQ::one(), 0};
        RationalAQ circ = circle_factor();
        for (int i = 1; i < m; ++i) r = r * circ;
    } else {
        Word switched = part.word;
        switched[bad] = -switched[bad];
        Word smoothed = part.word;
        smoothed.erase(smoothed.begin() + bad);
        LaurentAQ qq = LaurentAQ::mono(0, 1) - LaurentAQ::mono(0, -1);
        if (part.word[bad] > 0) {
            // P+ = a^2 P-  -  a (q - q^-1) P0
            RationalAQ s = homfly_rational(std::move(switched), part.strands);
            RationalAQ o = homfly_rational(std::move(smoothed), part.strands);
            r = s * LaurentAQ::mono(2, 0) + o * (LaurentAQ::mono(1, 0) * qq * LaurentAQ::mono(0, 0, -1));
        } else {
            // P- = a^-2 P+  +  a^-1 (q - q^-1) P0
            RationalAQ s = homfly_rational(std::move(switched), part.strands);
            RationalAQ o = homfly_rational(std::move(smoothed), part.strands);
            r = s * LaurentAQ::mono(-2, 0) + o * (LaurentAQ::mono(-1, 0) * qq);
        }
    }
    std::lock_guard<std::mutex> lk(memo_mutex());
    memo().emplace(std::make_pair(std::move(key), part.strands), r);
    return r;
}

RationalAQ homfly_rational(Word w, int strands) {
    Reduction red;
    reduce_word(std::move(w), strands, red);
    RationalAQ r{LaurentAQ::one(), 0};
    RationalAQ circ = circle_factor();
    int circles = red.circles;
    for (const auto& part : red.parts) {
        r = r * homfly_of_part(part);
        circles += 1;  // each part contributes one closed family
    }
    // Total pieces = circles; disjoint union multiplies with circ^(pieces-1).
    for (int i = 1; i < circles; ++i) r = r * circ;
    return r;
}

}  // namespace

LaurentAQ homfly(const BraidWord& w) {
    Word word;
    for (const auto& [i, s] : w.letters) word.push_back(s > 0 ? i : -i);
    RationalAQ r = homfly_rational(std::move(word), w.strands);
    LaurentAQ out = r.num;
    for (int i = 0; i < r.denpow; ++i) out = divide_q_qinv(out);
    return out;
}

LaurentAQ euler_characteristic(const HomologyTable& t) {
    LaurentAQ out;
    for (const auto& [d, g] : t.entries) {
        if (((d.k - d.j) % 2 + 2) % 2 != 0)
            throw std::logic_error("euler_characteristic: odd k - j");
        int half = (d.k - d.j) / 2;
        Int sign = (half % 2 == 0) ? 1 : -1;
        out.add_term(d.j, d.q, sign * Int(g.free_rank));
    }
    return out;
}

LaurentAQ specialize_sln(const LaurentAQ& p, int n) {
    LaurentAQ out;
    for (const auto& [k, c] : p.terms) out.add_term(0, k.second + n * k.first, c);
    return out;
}

bool euler_matches_reduced(const HomologyTable& t, const LaurentAQ& P) {
    return euler_characteristic(t) == P;
}

LaurentAQ unreduced_euler_series(const LaurentAQ& P, int qmax) {
    LaurentAQ out;
    for (const auto& [k, c] : P.terms)
        for (int e = k.second + 1; e <= qmax; e += 2) out.add_term(k.first, e, c);
    return out;
}

bool euler_matches_unreduced(const HomologyTable& t, const LaurentAQ& P) {
    LaurentAQ have = euler_characteristic(t);
    int qmax = t.window.qmax;
    LaurentAQ want = unreduced_euler_series(P, qmax);
    // Drop series terms beyond the computed window before comparing.
    LaurentAQ have_cut, want_cut;
    for (const auto& [k, c] : have.terms)
        if (k.second <= qmax) have_cut.add_term(k.first, k.second, c);
    for (const auto& [k, c] : want.terms)
        if (k.second <= qmax) want_cut.add_term(k.first, k.second, c);
    return have_cut == want_cut;
}

}  // namespace knothom
