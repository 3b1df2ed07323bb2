#include "relchern/chow_poly.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

#include "relchern/errors.hpp"

namespace relchern {

bool symbol_less(const Symbol& a, const Symbol& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.name < b.name;
}

RingPtr Ring::make(std::vector<Symbol> symbols, int bound) {
    if (bound < 0) throw RangeError("truncation bound must be nonnegative");
    std::set<std::string> seen;
    for (const auto& s : symbols) {
        if (s.name.empty()) throw SymbolError("symbol names must be nonempty");
        if (s.degree < 1) throw SymbolError("symbol '" + s.name + "' must have degree >= 1");
        if (!seen.insert(s.name).second) throw SymbolError("duplicate symbol '" + s.name + "' in ring");
    }
    std::sort(symbols.begin(), symbols.end(), symbol_less);
    return RingPtr(new Ring(std::move(symbols), bound));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name == name) return i;
    }
    return std::nullopt;
}

RingPtr Ring::with_bound(int bound) const { return make(symbols_, bound); }

RingPtr Ring::extended(std::vector<Symbol> extra, int bound) const {
    auto all = symbols_;
    all.insert(all.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    return make(std::move(all), bound);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

bool Monomial::is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](std::uint32_t e) { return e == 0; });
}

namespace {

int weight_of(const Ring& ring, const std::vector<std::uint32_t>& exps) {
    int w = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto& s = ring.symbol(i);
        if (s.kind == SymbolKind::Class) w += s.degree * static_cast<int>(exps[i]);
    }
    return w;
}

void require_same_ring(const ChowPoly& a, const ChowPoly& b, const char* op) {
    if (!same_ring(a.ring(), b.ring())) {
        throw ContextError(std::string(op) + ": operands live in different rings");
    }
}

} // namespace

ChowPoly::ChowPoly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw ContextError("null ring");
}

ChowPoly::ChowPoly(RingPtr ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    if (!ring_) throw ContextError("null ring");
    canonicalize();
}

void ChowPoly::canonicalize() {
    TermMap clean;
    for (auto& [mono, coeff] : terms_) {
        if (mono.exps.size() != ring_->size()) {
            throw ContextError("monomial arity does not match ring");
        }
        Monomial m{weight_of(*ring_, mono.exps), mono.exps};
        if (m.weight > ring_->bound() || coeff == 0) continue;
        clean[std::move(m)] += coeff;
    }
    for (auto& kv : clean) kv.second.canonicalize();
    std::erase_if(clean, [](const auto& kv) { return kv.second == 0; });
    terms_ = std::move(clean);
}

ChowPoly ChowPoly::constant(RingPtr ring, const Rational& value) {
    TermMap t;
    if (value != 0) t.emplace(Monomial{0, std::vector<std::uint32_t>(ring->size(), 0)}, value);
    return ChowPoly(std::move(ring), std::move(t));
}

ChowPoly ChowPoly::generator(RingPtr ring, std::string_view name) {
    const std::pair<std::string, std::uint32_t> power{std::string(name), 1};
    return monomial(std::move(ring), 1, std::span(&power, 1));
}

ChowPoly ChowPoly::monomial(RingPtr ring, const Rational& coeff,
                            std::span<const std::pair<std::string, std::uint32_t>> powers) {
    std::vector<std::uint32_t> exps(ring->size(), 0);
    for (const auto& [name, e] : powers) {
        auto idx = ring->index_of(name);
        if (!idx) throw SymbolError("unknown symbol '" + name + "'");
        exps[*idx] += e;
    }
    TermMap t;
    t.emplace(Monomial{0, std::move(exps)}, coeff);
    return ChowPoly(std::move(ring), std::move(t));
}

bool ChowPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational ChowPoly::constant_term() const {
    for (const auto& [m, c] : terms_) {
        if (m.is_one()) return c;
    }
    return 0;
}

int ChowPoly::max_weight() const {
    int w = -1;
    for (const auto& [m, c] : terms_) w = std::max(w, m.weight);
    return w;
}

int ChowPoly::min_weight() const {
    if (terms_.empty()) return -1;
    int w = terms_.begin()->first.weight;
    for (const auto& [m, c] : terms_) w = std::min(w, m.weight);
    return w;
}

bool ChowPoly::is_homogeneous(int weight) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return kv.first.weight == weight; });
}

std::uint32_t ChowPoly::degree_in(std::string_view name) const {
    auto idx = ring_->index_of(name);
    if (!idx) return 0;
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exps[*idx]);
    return d;
}

bool ChowPoly::involves(std::string_view name) const { return degree_in(name) > 0; }

ChowPoly ChowPoly::in_ring(RingPtr target) const {
    if (same_ring(ring_, target)) return ChowPoly(std::move(target), terms_);
    std::vector<std::optional<std::size_t>> map_to(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) {
        const auto& s = ring_->symbol(i);
        auto j = target->index_of(s.name);
        if (j && target->symbol(*j) == s) map_to[i] = j;
    }
    TermMap out;
    for (const auto& [m, c] : terms_) {
        std::vector<std::uint32_t> exps(target->size(), 0);
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!map_to[i]) {
                throw ContextError("symbol '" + ring_->symbol(i).name + "' has no counterpart in the target ring");
            }
            exps[*map_to[i]] = m.exps[i];
        }
        out[Monomial{0, std::move(exps)}] += c;
    }
    return ChowPoly(std::move(target), std::move(out));
}

bool operator==(const ChowPoly& a, const ChowPoly& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

ChowPoly ChowPoly::operator-() const {
    ChowPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ChowPoly operator+(const ChowPoly& a, const ChowPoly& b) {
    require_same_ring(a, b, "add");
    ChowPoly r = a;
    for (const auto& [m, c] : b.terms_) r.terms_[m] += c;
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
    return r;
}

ChowPoly operator-(const ChowPoly& a, const ChowPoly& b) { return a + (-b); }

ChowPoly operator*(const ChowPoly& a, const ChowPoly& b) {
    require_same_ring(a, b, "mul");
    const int bound = a.bound();
    const std::size_t n = a.ring_->size();
    ChowPoly::TermMap out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.weight + mb.weight > bound) continue;
            Monomial m{ma.weight + mb.weight, std::vector<std::uint32_t>(n)};
            for (std::size_t i = 0; i < n; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
            out[std::move(m)] += ca * cb;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    ChowPoly r(a.ring_);
    r.terms_ = std::move(out);
    return r;
}

ChowPoly operator*(const Rational& c, const ChowPoly& p) {
    if (c == 0) return ChowPoly(p.ring_);
    ChowPoly r = p;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

ChowPoly& ChowPoly::operator+=(const ChowPoly& other) { return *this = *this + other; }
ChowPoly& ChowPoly::operator-=(const ChowPoly& other) { return *this = *this - other; }
ChowPoly& ChowPoly::operator*=(const ChowPoly& other) { return *this = *this * other; }

ChowPoly add(const ChowPoly& a, const ChowPoly& b) { return a + b; }
ChowPoly mul(const ChowPoly& a, const ChowPoly& b) { return a * b; }
ChowPoly scale(const ChowPoly& p, const Rational& c) { return c * p; }

ChowPoly pow(const ChowPoly& base, unsigned exponent) {
    ChowPoly result = ChowPoly::constant(base.ring(), 1);
    ChowPoly square = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= square;
        exponent >>= 1U;
        if (exponent != 0) square *= square;
    }
    return result;
}

ChowPoly expand_ratio(const ChowPoly& num, const ChowPoly& denom) {
    require_same_ring(num, denom, "expand_ratio");
    if (denom.constant_term() != 1) {
        throw NonUnitError("denominator must have constant term 1, got " + denom.constant_term().get_str());
    }
    const ChowPoly tail = denom - ChowPoly::constant(denom.ring(), 1);
    if (tail.is_zero()) return num;
    const int step = tail.min_weight();
    if (step == 0) {
        throw NonUnitError("denominator is not a unit: it has non-constant terms of weight 0");
    }
    // 1/(1+p) = sum_k (-p)^k, and (-p)^k vanishes once k*step exceeds the bound.
    const ChowPoly neg = -tail;
    ChowPoly inverse = ChowPoly::constant(denom.ring(), 1);
    ChowPoly term = inverse;
    for (int k = 1; k * step <= denom.bound(); ++k) {
        term *= neg;
        if (term.is_zero()) break;
        inverse += term;
    }
    return num * inverse;
}

ChowPoly partial_derivative(const ChowPoly& p, std::string_view x, unsigned order) {
    auto idx = p.ring()->index_of(x);
    if (!idx) throw SymbolError("unknown symbol '" + std::string(x) + "'");
    if (p.ring()->symbol(*idx).kind != SymbolKind::Formal) {
        throw SymbolError("'" + std::string(x) + "' is not a formal variable");
    }
    ChowPoly::TermMap out;
    for (const auto& [m, c] : p.terms()) {
        const std::uint32_t e = m.exps[*idx];
        if (e < order) continue;
        Rational factor = c;
        for (unsigned k = 0; k < order; ++k) factor *= static_cast<unsigned long>(e - k);
        Monomial dm = m;
        dm.exps[*idx] -= order;
        out[std::move(dm)] += factor;
    }
    return ChowPoly(p.ring(), std::move(out));
}

ChowPoly substitute_all(const ChowPoly& p, const std::map<std::string, ChowPoly>& images, const RingPtr& target) {
    const Ring& src = *p.ring();
    const std::size_t n = src.size();
    std::vector<const ChowPoly*> image(n, nullptr);
    std::vector<std::optional<std::size_t>> map_to(n);
    for (const auto& [name, v] : images) {
        auto idx = src.index_of(name);
        if (!idx) throw SymbolError("cannot substitute unknown symbol '" + name + "'");
        if (!same_ring(v.ring(), target)) throw ContextError("substitution value lives in a different ring");
        image[*idx] = &v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (image[i]) continue;
        auto j = target->index_of(src.symbol(i).name);
        if (j && target->symbol(*j) == src.symbol(i)) map_to[i] = j;
    }

    std::map<std::pair<std::size_t, std::uint32_t>, ChowPoly> power_cache;
    auto power_of = [&](std::size_t i, std::uint32_t e) -> const ChowPoly& {
        auto key = std::make_pair(i, e);
        auto it = power_cache.find(key);
        if (it == power_cache.end()) it = power_cache.emplace(key, pow(*image[i], e)).first;
        return it->second;
    };

    ChowPoly result(target);
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::uint32_t> exps(target->size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (m.exps[i] == 0 || image[i]) continue;
            if (!map_to[i]) {
                throw ContextError("symbol '" + src.symbol(i).name + "' has no counterpart in the target ring");
            }
            exps[*map_to[i]] = m.exps[i];
        }
        ChowPoly::TermMap kept;
        kept.emplace(Monomial{0, std::move(exps)}, c);
        ChowPoly term(target, std::move(kept));
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) {
            if (image[i] && m.exps[i] != 0) term *= power_of(i, m.exps[i]);
        }
        result += term;
    }
    return result;
}

ChowPoly substitute(const ChowPoly& p, std::string_view x, const ChowPoly& v) {
    return substitute_all(p, {{std::string(x), v}}, v.ring());
}

ChowPoly component(const ChowPoly& p, int k) {
    if (k < 0 || k > p.bound()) {
        throw RangeError("component " + std::to_string(k) + " outside 0.." + std::to_string(p.bound()));
    }
    ChowPoly::TermMap out;
    for (const auto& [m, c] : p.terms()) {
        if (m.weight == k) out.emplace(m, c);
    }
    return ChowPoly(p.ring(), std::move(out));
}

} // namespace relchern
