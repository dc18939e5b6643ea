#include "jumploci/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "jumploci/error.hpp"

namespace jumploci {

// ---------------------------------------------------------------------------
// Words

Word::Word(std::vector<Letter> letters) {
    letters_.reserve(letters.size());
    for (const auto& l : letters) {
        if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

Word Word::generator(std::size_t g, int exp) { return Word({Letter{g, exp}}); }

Word Word::commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.exp = -l.exp;
    Word w;
    w.letters_ = std::move(out);
    return w;
}

Word Word::power(long n) const {
    Word base = n < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
    return out;
}

Word Word::cyclically_reduced() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo].gen == letters_[hi - 1].gen &&
           letters_[lo].exp == -letters_[hi - 1].exp) {
        ++lo;
        --hi;
    }
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<long>(lo), letters_.begin() + static_cast<long>(hi));
    return w;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> out = a.letters_;
    for (const auto& l : b.letters_) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    Word w;
    w.letters_ = std::move(out);
    return w;
}

std::string Word::to_string(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size();) {
        std::size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
        const long run = static_cast<long>(j - i) * letters_[i].exp;
        if (i) os << ' ';
        os << names.at(letters_[i].gen);
        if (run != 1) os << '^' << run;
        i = j;
    }
    return os.str();
}

FinitePresentation FinitePresentation::make(std::vector<std::string> names, std::vector<Word> relators,
                                            bool aspherical) {
    FinitePresentation p;
    p.generator_names = std::move(names);
    p.aspherical = aspherical;
    for (auto& r : relators) {
        for (const auto& l : r.letters())
            if (l.gen >= p.generator_names.size())
                throw DomainError("relator letter index out of range");
        Word c = r.cyclically_reduced();
        if (!c.empty()) p.relators.push_back(std::move(c));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class WordParser {
public:
    WordParser(std::string_view text, const std::vector<std::string>& names)
        : text_(text), names_(names) {
        order_.resize(names.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return names_[a].size() > names_[b].size();
        });
    }

    Word parse() {
        Word w = sequence();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, "column " + std::to_string(pos_ + 1) + " of \"" + std::string(text_) + "\"");
    }

    void skip_space() {
        while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
            ++pos_;
    }

    Word sequence() {
        Word w;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            const char c = text_[pos_];
            if (c == ']' || c == ',' || c == ')') break;
            w = w * factor();
        }
        return w;
    }

    Word factor() {
        Word base = atom();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_space();
            std::size_t start = pos_;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.empty() || digits == "-" || digits == "+") fail("expected integer exponent");
            base = base.power(std::stol(digits));
        }
        return base;
    }

    Word atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of word");
        if (text_[pos_] == '[') {
            ++pos_;
            Word x = sequence();
            expect(',');
            Word y = sequence();
            expect(']');
            return Word::commutator(x, y);
        }
        if (text_[pos_] == '(') {
            ++pos_;
            Word x = sequence();
            expect(')');
            return x;
        }
        if (text_[pos_] == '1') {
            ++pos_;
            return Word();
        }
        for (auto idx : order_) {
            const auto& name = names_[idx];
            if (!name.empty() && text_.substr(pos_, name.size()) == name) {
                pos_ += name.size();
                return Word::generator(idx);
            }
        }
        fail("unknown generator");
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view text_;
    const std::vector<std::string>& names_;
    std::vector<std::size_t> order_;
    std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
    return WordParser(text, names).parse();
}

FinitePresentation parse_presentation_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw ParseError("missing 'generators' array", "top level");
    std::vector<std::string> names;
    for (const auto& g : j["generators"]) {
        if (!g.is_string()) throw ParseError("generator names must be strings", "generators");
        names.push_back(g.get<std::string>());
    }
    if (names.empty()) throw ParseError("presentation needs at least one generator", "generators");
    {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("duplicate generator name", "generators");
    }
    std::vector<Word> relators;
    if (j.contains("relators")) {
        if (!j["relators"].is_array()) throw ParseError("'relators' must be an array", "relators");
        std::size_t i = 0;
        for (const auto& r : j["relators"]) {
            if (!r.is_string()) throw ParseError("relators must be strings", "relators[" + std::to_string(i) + "]");
            try {
                relators.push_back(parse_word(r.get<std::string>(), names));
            } catch (const ParseError& e) {
                throw ParseError(std::string("relators[") + std::to_string(i) + "]: " + e.what(), e.location());
            }
            ++i;
        }
    }
    bool aspherical = false;
    if (j.contains("aspherical")) {
        if (!j["aspherical"].is_boolean()) throw ParseError("'aspherical' must be a boolean", "aspherical");
        aspherical = j["aspherical"].get<bool>();
    }
    return FinitePresentation::make(std::move(names), std::move(relators), aspherical);
}

std::string presentation_to_json(const FinitePresentation& p) {
    nlohmann::json j;
    j["generators"] = p.generator_names;
    std::vector<std::string> rels;
    for (const auto& r : p.relators) rels.push_back(r.to_string(p.generator_names));
    j["relators"] = rels;
    j["aspherical"] = p.aspherical;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Abelianization

IntMatrix exponent_matrix(const FinitePresentation& p) {
    IntMatrix e(p.relator_count(), p.generator_count(), Integer(0));
    for (std::size_t i = 0; i < p.relator_count(); ++i)
        for (const auto& l : p.relators[i].letters()) e(i, l.gen) += l.exp;
    return e;
}

namespace {

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

long checked_long(const Integer& x) {
    if (!x.fits_slong_p()) throw Error("abelianization coordinate overflow");
    return x.get_si();
}

}  // namespace

AbelianizationData abelianize(const FinitePresentation& p) {
    const std::size_t g = p.generator_count();
    const IntMatrix e = exponent_matrix(p);
    const SmithForm s = smith_normal_form(e);
    // x -> x * right sends the relation lattice onto the diagonal lattice.
    std::vector<std::size_t> torsion_cols, free_cols;
    AbelianizationData a;
    for (std::size_t k = 0; k < s.rank; ++k) {
        if (s.diag(k, k) != 1) {
            torsion_cols.push_back(k);
            a.torsion.push_back(checked_long(s.diag(k, k)));
        }
    }
    for (std::size_t k = s.rank; k < g; ++k) free_cols.push_back(k);
    a.free_rank = free_cols.size();
    std::vector<std::size_t> cols = free_cols;
    cols.insert(cols.end(), torsion_cols.begin(), torsion_cols.end());
    a.generator_coords = IntMatrix(g, cols.size(), Integer(0));
    for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Integer v = s.right(j, cols[c]);
            if (c >= a.free_rank) {
                const long d = a.torsion[c - a.free_rank];
                v = mod_pos(checked_long(v % d), d);
            }
            a.generator_coords(j, c) = v;
        }
    }
    const IntMatrix inv = unimodular_inverse(s.right);
    a.basis_in_generators = IntMatrix(cols.size(), g, Integer(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t j = 0; j < g; ++j) a.basis_in_generators(c, j) = inv(cols[c], j);
    return a;
}

H1Element AbelianizationData::zero() const {
    return {std::vector<long>(free_rank, 0), std::vector<long>(torsion.size(), 0)};
}

H1Element AbelianizationData::reduce(std::vector<long> f, std::vector<long> t) const {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod_pos(t[i], torsion[i]);
    return {std::move(f), std::move(t)};
}

H1Element AbelianizationData::generator(std::size_t j, int exp) const {
    H1Element h = zero();
    for (std::size_t k = 0; k < free_rank; ++k) h.free[k] = exp * checked_long(generator_coords(j, k));
    for (std::size_t i = 0; i < torsion.size(); ++i)
        h.torsion[i] = mod_pos(exp * checked_long(generator_coords(j, free_rank + i)), torsion[i]);
    return h;
}

H1Element AbelianizationData::add(const H1Element& a, const H1Element& b) const {
    H1Element h = a;
    for (std::size_t k = 0; k < free_rank; ++k) h.free[k] += b.free[k];
    for (std::size_t i = 0; i < torsion.size(); ++i)
        h.torsion[i] = mod_pos(h.torsion[i] + b.torsion[i], torsion[i]);
    return h;
}

H1Element AbelianizationData::negate(const H1Element& a) const {
    H1Element h = a;
    for (auto& v : h.free) v = -v;
    for (std::size_t i = 0; i < torsion.size(); ++i) h.torsion[i] = mod_pos(-h.torsion[i], torsion[i]);
    return h;
}

H1Element AbelianizationData::project(const Word& w) const {
    H1Element h = zero();
    for (const auto& l : w.letters()) h = add(h, generator(l.gen, l.exp));
    return h;
}

// ---------------------------------------------------------------------------
// Fox calculus

void add_term(GroupRingElement& x, const H1Element& e, const Integer& c) {
    if (c == 0) return;
    auto it = x.find(e);
    if (it == x.end()) {
        x.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) x.erase(it);
}

AlexanderMatrix fox_matrix(const FinitePresentation& p, const AbelianizationData& a) {
    AlexanderMatrix m{Matrix<GroupRingElement>(p.relator_count(), p.generator_count()), a};
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        H1Element prefix = a.zero();
        for (const auto& l : p.relators[i].letters()) {
            const H1Element x = a.generator(l.gen);
            if (l.exp > 0) {
                add_term(m.entries(i, l.gen), prefix, Integer(1));
                prefix = a.add(prefix, x);
            } else {
                prefix = a.add(prefix, a.negate(x));
                add_term(m.entries(i, l.gen), prefix, Integer(-1));
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Reidemeister-Schreier

std::size_t AbelianQuotient::order() const {
    std::size_t n = 1;
    for (auto m : moduli) n *= static_cast<std::size_t>(m);
    return n;
}

CoverPresentation reidemeister_schreier(const FinitePresentation& p, const AbelianizationData& a,
                                        const AbelianQuotient& q) {
    const std::size_t g = p.generator_count();
    const std::size_t k = q.moduli.size();
    if (q.images.size() != a.coordinate_count())
        throw DomainError("quotient map needs one image per H_1 basis element");
    for (auto m : q.moduli)
        if (m < 1) throw DomainError("quotient moduli must be positive");
    for (std::size_t t = 0; t < a.torsion.size(); ++t) {
        for (std::size_t c = 0; c < k; ++c) {
            if (mod_pos(a.torsion[t] * q.images[a.free_rank + t][c], q.moduli[c]) != 0)
                throw DomainError("quotient map is not defined on the torsion of H_1");
        }
    }
    using Elem = std::vector<long>;
    std::vector<Elem> gen_image(g, Elem(k, 0));
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t c = 0; c < k; ++c) {
            long v = 0;
            for (std::size_t b = 0; b < a.coordinate_count(); ++b)
                v = mod_pos(v + mod_pos(checked_long(a.generator_coords(j, b)), q.moduli[c]) *
                                    q.images[b][c],
                            q.moduli[c]);
            gen_image[j][c] = v;
        }
    auto step = [&](const Elem& e, std::size_t j, int sign) {
        Elem out(k);
        for (std::size_t c = 0; c < k; ++c) out[c] = mod_pos(e[c] + sign * gen_image[j][c], q.moduli[c]);
        return out;
    };

    // BFS over cosets builds a prefix-closed Schreier transversal.
    std::map<Elem, std::size_t> index;
    std::vector<Elem> cosets;
    std::vector<Word> transversal;
    std::map<std::pair<std::size_t, std::size_t>, bool> tree_edge;
    index.emplace(Elem(k, 0), 0);
    cosets.push_back(Elem(k, 0));
    transversal.emplace_back();
    for (std::size_t head = 0; head < cosets.size(); ++head) {
        for (std::size_t j = 0; j < g; ++j) {
            for (int sign : {1, -1}) {
                Elem next = step(cosets[head], j, sign);
                if (index.count(next)) continue;
                index.emplace(next, cosets.size());
                cosets.push_back(next);
                transversal.push_back(transversal[head] * Word::generator(j, sign));
                // tree edges are recorded as (source coset, generator) with positive exponent
                if (sign > 0) tree_edge[{head, j}] = true;
                else tree_edge[{cosets.size() - 1, j}] = true;
            }
        }
    }
    if (cosets.size() != q.order()) throw DomainError("not a covering of the stated degree");

    CoverPresentation out;
    out.degree = cosets.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> schreier;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cosets.size(); ++c) {
        for (std::size_t j = 0; j < g; ++j) {
            if (tree_edge.count({c, j})) continue;
            const std::size_t target = index.at(step(cosets[c], j, 1));
            schreier.emplace(std::make_pair(c, j), names.size());
            names.push_back(p.generator_names[j] + "." + std::to_string(c));
            out.generator_words.push_back(transversal[c] * Word::generator(j) *
                                          transversal[target].inverse());
        }
    }
    std::vector<Word> relators;
    for (std::size_t c = 0; c < cosets.size(); ++c) {
        for (const auto& r : p.relators) {
            std::vector<Letter> letters;
            std::size_t u = c;
            for (const auto& l : r.letters()) {
                if (l.exp > 0) {
                    auto it = schreier.find({u, l.gen});
                    if (it != schreier.end()) letters.push_back({it->second, 1});
                    u = index.at(step(cosets[u], l.gen, 1));
                } else {
                    const std::size_t v = index.at(step(cosets[u], l.gen, -1));
                    auto it = schreier.find({v, l.gen});
                    if (it != schreier.end()) letters.push_back({it->second, -1});
                    u = v;
                }
            }
            relators.emplace_back(std::move(letters));
        }
    }
    out.presentation = FinitePresentation::make(std::move(names), std::move(relators), p.aspherical);
    return out;
}

FinitePresentation tietze_permute(const FinitePresentation& p, const std::vector<std::size_t>& perm,
                                  const std::vector<int>& signs) {
    const std::size_t g = p.generator_count();
    if (perm.size() != g || signs.size() != g) throw DomainError("tietze_permute: size mismatch");
    std::vector<std::size_t> inv(g);
    for (std::size_t i = 0; i < g; ++i) inv[perm[i]] = i;
    std::vector<std::string> names(g);
    for (std::size_t i = 0; i < g; ++i) names[i] = p.generator_names[perm[i]] + (signs[i] < 0 ? "'" : "");
    std::vector<Word> rels;
    for (const auto& r : p.relators) {
        std::vector<Letter> letters;
        for (const auto& l : r.letters()) {
            const std::size_t ni = inv[l.gen];
            letters.push_back({ni, l.exp * signs[ni]});
        }
        rels.emplace_back(std::move(letters));
    }
    return FinitePresentation::make(std::move(names), std::move(rels), p.aspherical);
}

}  // namespace jumploci
