#include "relchern/pushforward.hpp"

#include <map>

#include "relchern/errors.hpp"

namespace relchern {

BundleSpec BundleSpec::make(std::vector<BundleRoot> roots) {
    if (roots.empty()) throw DomainError("a bundle needs at least one Chern root");
    RingPtr ring = roots.front().root.ring();
    std::vector<BundleRoot> merged;
    int rank = 0;
    for (auto& r : roots) {
        if (!same_ring(r.root.ring(), ring)) throw ContextError("bundle roots live in different rings");
        if (r.multiplicity < 1) throw DomainError("root multiplicities must be positive");
        if (!r.root.is_homogeneous(1)) throw DomainError("Chern roots must be linear classes");
        rank += r.multiplicity;
        bool found = false;
        for (auto& m : merged) {
            if (m.root == r.root) {
                m.multiplicity += r.multiplicity;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(r));
    }
    if (rank < 2) throw DomainError("bundle rank must be at least 2");
    return BundleSpec(std::move(ring), std::move(merged), rank);
}

std::vector<BundleRoot> BundleSpec::nontrivial_roots() const {
    std::vector<BundleRoot> out;
    for (const auto& r : roots_) {
        if (!r.root.is_zero()) out.push_back(r);
    }
    return out;
}

int BundleSpec::zero_multiplicity() const {
    for (const auto& r : roots_) {
        if (r.root.is_zero()) return r.multiplicity;
    }
    return 0;
}

ChowPoly BundleSpec::total_chern() const {
    const ChowPoly one = ChowPoly::constant(ring_, 1);
    ChowPoly c = one;
    for (const auto& r : roots_) c *= pow(one + r.root, static_cast<unsigned>(r.multiplicity));
    return c;
}

ProjClass::ProjClass(BundleSpec bundle, std::vector<ChowPoly> coeffs)
    : bundle_(std::move(bundle)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (!same_ring(c.ring(), bundle_.ring())) throw ContextError("class coefficients must live on the base");
    }
    const auto max_len = static_cast<std::size_t>(bundle_.base_dim() + bundle_.rank());
    if (coeffs_.size() > max_len) coeffs_.resize(max_len, ChowPoly(bundle_.ring()));
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ChowPoly ProjClass::coeff(int j) const {
    if (j < 0 || j >= length()) return ChowPoly(bundle_.ring());
    return coeffs_[static_cast<std::size_t>(j)];
}

RingPtr ProjClass::ambient_ring(const BundleSpec& bundle, const std::string& hyperplane) {
    if (bundle.ring()->contains(hyperplane)) {
        throw SymbolError("hyperplane symbol '" + hyperplane + "' clashes with a base symbol");
    }
    return bundle.ring()->extended({Symbol{hyperplane, 1, SymbolKind::Class}},
                                   bundle.base_dim() + bundle.fiber_dim());
}

ProjClass ProjClass::from_ambient(const BundleSpec& bundle, const ChowPoly& poly, const std::string& hyperplane) {
    const RingPtr ambient = ambient_ring(bundle, hyperplane);
    if (!same_ring(poly.ring(), ambient)) throw ContextError("class does not live in the ambient ring of the bundle");
    const auto h_index = *ambient->index_of(hyperplane);
    const Ring& base = *bundle.ring();

    // Ambient symbols other than H keep their relative order in the base ring.
    std::vector<std::size_t> to_base(ambient->size());
    for (std::size_t i = 0; i < ambient->size(); ++i) {
        if (i != h_index) to_base[i] = *base.index_of(ambient->symbol(i).name);
    }
    std::map<std::uint32_t, ChowPoly::TermMap> parts;
    for (const auto& [m, c] : poly.terms()) {
        std::vector<std::uint32_t> exps(base.size(), 0);
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (i != h_index) exps[to_base[i]] = m.exps[i];
        }
        parts[m.exps[h_index]].emplace(Monomial{0, std::move(exps)}, c);
    }
    std::vector<ChowPoly> coeffs;
    for (auto& [power, terms] : parts) {
        coeffs.resize(power + 1, ChowPoly(bundle.ring()));
        coeffs[power] = ChowPoly(bundle.ring(), std::move(terms));
    }
    return ProjClass(bundle, std::move(coeffs));
}

ChowPoly ProjClass::to_ambient(const std::string& hyperplane) const {
    const RingPtr ambient = ambient_ring(bundle_, hyperplane);
    const ChowPoly h = ChowPoly::generator(ambient, hyperplane);
    ChowPoly out(ambient);
    ChowPoly h_power = ChowPoly::constant(ambient, 1);
    for (const auto& c : coeffs_) {
        out += c.in_ring(ambient) * h_power;
        h_power *= h;
    }
    return out;
}

std::pair<BundleSpec, ProjClass> normalize_twist(std::vector<BundleRoot> roots, std::span<const ChowPoly> h_coeffs) {
    if (roots.empty()) throw DomainError("a bundle needs at least one Chern root");
    const ChowPoly first = roots.front().root;
    for (auto& r : roots) r.root = r.root - first;
    BundleSpec bundle = BundleSpec::make(std::move(roots));

    const RingPtr ambient = ProjClass::ambient_ring(bundle);
    const ChowPoly shifted_h = ChowPoly::generator(ambient, "H") - first.in_ring(ambient);
    ChowPoly twisted(ambient);
    ChowPoly h_power = ChowPoly::constant(ambient, 1);
    for (const auto& c : h_coeffs) {
        twisted += c.in_ring(ambient) * h_power;
        h_power *= shifted_h;
    }
    ProjClass cls = ProjClass::from_ambient(bundle, twisted);
    return {std::move(bundle), std::move(cls)};
}

ChowPoly inverse_total_chern(const BundleSpec& bundle) {
    return expand_ratio(ChowPoly::constant(bundle.ring(), 1), bundle.total_chern());
}

ChowPoly pushforward_power(const BundleSpec& bundle, int power) {
    const int j = power - bundle.fiber_dim();
    if (j < 0 || j > bundle.base_dim()) return ChowPoly(bundle.ring());
    return component(inverse_total_chern(bundle), j);
}

ChowPoly pushforward_series(const ProjClass& cls) {
    const BundleSpec& bundle = cls.bundle();
    const int n = bundle.fiber_dim();
    const ChowPoly inverse = inverse_total_chern(bundle);
    ChowPoly out(bundle.ring());
    for (int j = n; j < cls.length() && j - n <= bundle.base_dim(); ++j) {
        out += cls.coeff(j) * component(inverse, j - n);
    }
    return out;
}

namespace {

ChowPoly x_power(const RingPtr& ring, const std::string& x, std::uint32_t e) {
    const std::pair<std::string, std::uint32_t> p{x, e};
    return ChowPoly::monomial(ring, 1, std::span(&p, 1));
}

// q with p = (x_a - x_b) q, by synthetic division in x_a.
ChowPoly exact_divide_by_difference(const ChowPoly& p, const std::string& xa, const std::string& xb) {
    const RingPtr& ring = p.ring();
    const auto ia = *ring->index_of(xa);
    std::map<std::uint32_t, ChowPoly::TermMap> split;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        rest.exps[ia] = 0;
        split[m.exps[ia]].emplace(std::move(rest), c);
    }
    if (split.empty()) return ChowPoly(ring);
    const std::uint32_t top = split.rbegin()->first;
    auto part = [&](std::uint32_t k) {
        auto it = split.find(k);
        return it == split.end() ? ChowPoly(ring) : ChowPoly(ring, it->second);
    };
    const ChowPoly xb_poly = ChowPoly::generator(ring, xb);

    ChowPoly quotient(ring);
    ChowPoly carry(ring);  // q_k, running from the top
    for (std::uint32_t k = top; k >= 1; --k) {
        carry = part(k) + xb_poly * carry;
        quotient += carry * x_power(ring, xa, k - 1);
    }
    const ChowPoly remainder = part(0) + xb_poly * carry;
    if (!remainder.is_zero()) {
        throw InvariantViolation("divided difference: division by (" + xa + " - " + xb + ") is not exact");
    }
    return quotient;
}

} // namespace

RingPtr formal_ring(const RingPtr& base, int count, std::vector<std::string>& names) {
    names.clear();
    std::vector<Symbol> extra;
    for (int i = 1; i <= count; ++i) {
        std::string name = "_x" + std::to_string(i);
        if (base->contains(name)) throw SymbolError("base ring already defines '" + name + "'");
        extra.push_back(Symbol{name, 1, SymbolKind::Formal});
        names.push_back(std::move(name));
    }
    return base->extended(std::move(extra), base->bound());
}

ChowPoly divided_difference(std::span<const ChowPoly> coeffs, std::span<const std::string> points,
                            const RingPtr& aux) {
    const std::size_t m = points.size();
    if (m == 0) throw DomainError("divided difference needs at least one point");
    for (const auto& x : points) {
        auto idx = aux->index_of(x);
        if (!idx || aux->symbol(*idx).kind != SymbolKind::Formal) {
            throw SymbolError("'" + x + "' is not a formal variable of the auxiliary ring");
        }
    }
    std::vector<ChowPoly> lifted;
    lifted.reserve(coeffs.size());
    for (const auto& c : coeffs) lifted.push_back(c.in_ring(aux));

    // table[a] holds f[x_a, ..., x_{a+len-1}] for the current len.
    std::vector<ChowPoly> table;
    table.reserve(m);
    for (std::size_t a = 0; a < m; ++a) {
        ChowPoly value(aux);
        for (std::size_t k = 0; k < lifted.size(); ++k) {
            if (!lifted[k].is_zero()) value += lifted[k] * x_power(aux, points[a], static_cast<std::uint32_t>(k));
        }
        table.push_back(std::move(value));
    }
    for (std::size_t len = 2; len <= m; ++len) {
        for (std::size_t a = 0; a + len <= m; ++a) {
            table[a] = exact_divide_by_difference(table[a] - table[a + 1], points[a], points[a + len - 1]);
        }
    }
    return table.front();
}

ChowPoly apply_d_factor(const ChowPoly& g, const std::string& x, unsigned k) {
    if (k == 0) return g;
    Rational factorial = 1;
    for (unsigned i = 2; i <= k; ++i) factorial *= i;
    const ChowPoly lifted = x_power(g.ring(), x, k) * g;
    return scale(partial_derivative(lifted, x, k), 1 / factorial);
}

ChowPoly pushforward_closed_form(const ProjClass& cls) {
    const BundleSpec& bundle = cls.bundle();
    if (!bundle.is_normalized()) {
        throw DomainError("closed-form pushforward needs a normalized bundle (one Chern root equal to 0)");
    }
    const int n = bundle.fiber_dim();
    const int dim = bundle.base_dim();
    const auto roots = bundle.nontrivial_roots();
    const int m = static_cast<int>(roots.size());
    if (m == 0) return cls.coeff(n);

    // (alpha - alpha_{<n}) / x^{rank-m} = sum_j alpha_{n+j} x^{m+j-1}; j > dim cannot survive x_i = -L_i.
    std::vector<ChowPoly> p(static_cast<std::size_t>(m + dim), ChowPoly(bundle.ring()));
    for (int j = 0; j <= dim; ++j) p[static_cast<std::size_t>(m + j - 1)] = cls.coeff(n + j);

    std::vector<std::string> names;
    const RingPtr aux = formal_ring(bundle.ring(), m, names);
    ChowPoly g = divided_difference(p, names, aux);
    for (int i = 0; i < m; ++i) {
        g = apply_d_factor(g, names[static_cast<std::size_t>(i)],
                           static_cast<unsigned>(roots[static_cast<std::size_t>(i)].multiplicity - 1));
    }
    std::map<std::string, ChowPoly> at_roots;
    for (int i = 0; i < m; ++i) {
        at_roots.emplace(names[static_cast<std::size_t>(i)], -roots[static_cast<std::size_t>(i)].root);
    }
    return substitute_all(g, at_roots, bundle.ring());
}

} // namespace relchern
