#include "jumploci/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "jumploci/error.hpp"

namespace jumploci {

LaurentPoly::LaurentPoly(std::size_t nvars, const Cyclotomic& constant) : nvars_(nvars) {
    if (!constant.is_zero()) terms_.emplace(Exponent(nvars, 0), constant);
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, Exponent e, const Cyclotomic& c) {
    LaurentPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t k) {
    Exponent e(nvars, 0);
    e[k] = 1;
    return monomial(nvars, std::move(e));
}

unsigned long LaurentPoly::conductor() const {
    unsigned long n = 1;
    for (const auto& [e, c] : terms_) n = lcm_u(n, c.conductor());
    return n;
}

void LaurentPoly::add_term(const Exponent& e, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(std::max(a.nvars_, b.nvars_));
    Exponent e(out.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

LaurentPoly LaurentPoly::scaled(const Cyclotomic& c, const Exponent& shift) const {
    LaurentPoly out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) {
        Exponent f = e;
        for (std::size_t k = 0; k < f.size(); ++k) f[k] += shift[k];
        out.terms_.emplace_hint(out.terms_.end(), std::move(f), v * c);
    }
    return out;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& b) const {
    if (b.is_zero()) throw DomainError("Laurent division by zero");
    LaurentPoly q(nvars_);
    if (is_zero()) return q;
    // The quotient's Newton polytope is N(a) - N(b): per-variable ranges bound
    // every admissible quotient exponent.
    auto ranges = [](const LaurentPoly& p) {
        std::vector<std::pair<long, long>> r(p.nvars_, {0, 0});
        bool first = true;
        for (const auto& [e, c] : p.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (first) r[k] = {e[k], e[k]};
                else {
                    r[k].first = std::min(r[k].first, e[k]);
                    r[k].second = std::max(r[k].second, e[k]);
                }
            }
            first = false;
        }
        return r;
    };
    const auto ra = ranges(*this);
    const auto rb = ranges(b);
    const auto& [eb, cb] = *b.terms_.rbegin();
    const Cyclotomic cb_inv = cb.inverse();
    LaurentPoly r = *this;
    Exponent e(nvars_);
    while (!r.is_zero()) {
        const auto& [er, cr] = *r.terms_.rbegin();
        for (std::size_t k = 0; k < nvars_; ++k) {
            e[k] = er[k] - eb[k];
            if (e[k] < ra[k].first - rb[k].first || e[k] > ra[k].second - rb[k].second)
                return std::nullopt;
        }
        const Cyclotomic c = cr * cb_inv;
        q.add_term(e, c);
        r -= b.scaled(c, e);
    }
    return q;
}

Cyclotomic LaurentPoly::evaluate(std::span<const Cyclotomic> point) const {
    std::vector<std::map<long, Cyclotomic>> powers(nvars_);
    auto power = [&](std::size_t k, long e) -> const Cyclotomic& {
        auto it = powers[k].find(e);
        if (it == powers[k].end()) it = powers[k].emplace(e, point[k].pow(e)).first;
        return it->second;
    };
    Cyclotomic acc;
    for (const auto& [e, c] : terms_) {
        Cyclotomic t = c;
        for (std::size_t k = 0; k < nvars_; ++k)
            if (e[k] != 0) t *= power(k, e[k]);
        acc += t;
    }
    return acc;
}

std::optional<std::uint64_t> LaurentPoly::evaluate_modp(const ModpEmbedding& f,
                                                        std::span<const std::uint64_t> point) const {
    std::uint64_t acc = 0;
    const std::uint64_t p = f.prime();
    for (const auto& [e, c] : terms_) {
        auto v = f.reduce(c);
        if (!v) return std::nullopt;
        std::uint64_t t = *v;
        for (std::size_t k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            const std::uint64_t base = e[k] > 0 ? point[k] : f.inv(point[k]);
            t = f.mul(t, f.pow(base, static_cast<std::uint64_t>(e[k] > 0 ? e[k] : -e[k])));
        }
        acc = (acc + t) % p;
    }
    return acc;
}

LaurentPoly LaurentPoly::monomial_normalised() const {
    if (terms_.empty()) return *this;
    Exponent shift = terms_.begin()->first;
    for (auto& s : shift) s = -s;
    return scaled(Cyclotomic(1), shift);
}

std::vector<std::size_t> LaurentPoly::support_variables() const {
    std::vector<bool> used(nvars_, false);
    for (const auto& [e, c] : terms_)
        for (std::size_t k = 0; k < nvars_; ++k)
            if (e[k] != 0) used[k] = true;
    // a single-term polynomial is a unit times a monomial; its variables still count
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < nvars_; ++k)
        if (used[k]) out.push_back(k);
    return out;
}

std::string LaurentPoly::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.to_string() << ')';
        for (std::size_t k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            os << '*';
            if (k < names.size()) os << names[k];
            else os << 's' << k;
            if (e[k] != 1) os << '^' << e[k];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<Cyclotomic> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::x_minus(const Cyclotomic& root) { return UniPoly({-root, Cyclotomic(1)}); }

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Cyclotomic> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(Cyclotomic(-1)); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Cyclotomic> c(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::scaled(const Cyclotomic& s) const {
    std::vector<Cyclotomic> c = coeffs_;
    for (auto& v : c) v *= s;
    return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Cyclotomic> r = coeffs_;
    if (degree() < d.degree()) return {UniPoly(), *this};
    std::vector<Cyclotomic> q(static_cast<std::size_t>(degree() - d.degree() + 1));
    const Cyclotomic lead_inv = d.leading().inverse();
    const std::size_t dd = d.coeffs_.size() - 1;
    for (std::size_t i = r.size(); i-- > dd;) {
        if (r[i].is_zero()) continue;
        Cyclotomic c = r[i] * lead_inv;
        q[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= c * d.coeffs_[j];
    }
    r.resize(dd);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Cyclotomic UniPoly::evaluate(const Cyclotomic& x) const {
    Cyclotomic acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Cyclotomic> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = coeffs_[i] * Cyclotomic(static_cast<long>(i));
    return UniPoly(std::move(c));
}

UniPoly to_unipoly(const LaurentPoly& p, std::size_t var) {
    if (p.is_zero()) return {};
    long lo = 0, hi = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != var && e[k] != 0) throw DomainError("polynomial is not univariate");
        lo = first ? e[var] : std::min(lo, e[var]);
        hi = first ? e[var] : std::max(hi, e[var]);
        first = false;
    }
    std::vector<Cyclotomic> c(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e[var] - lo)] = v;
    return UniPoly(std::move(c));
}

}  // namespace jumploci
