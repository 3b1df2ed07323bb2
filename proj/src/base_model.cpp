#include "relchern/base_model.hpp"

#include <regex>

#include "relchern/errors.hpp"

namespace relchern {

FormalBase::FormalBase(int dim, std::vector<std::string> divisors, bool fano)
    : dim_(dim), divisors_(std::move(divisors)), fano_(fano) {
    if (dim < 0) throw DomainError("base dimension must be nonnegative");
    std::vector<Symbol> symbols;
    for (int i = 1; i <= dim; ++i) symbols.push_back(Symbol{chern_symbol(i), i, SymbolKind::Class});
    for (const auto& d : divisors_) symbols.push_back(Symbol{d, 1, SymbolKind::Class});
    ring_ = Ring::make(std::move(symbols), dim);
    if (fano_ && !ring_->contains("L")) throw DomainError("the Fano convention needs a divisor named L");
}

ProjectiveSpaceBase::ProjectiveSpaceBase(int dim, int l_multiple, std::string hyperplane)
    : ProjectiveSpaceBase(dim, std::map<std::string, int>{{"L", l_multiple}}, std::move(hyperplane)) {}

ProjectiveSpaceBase::ProjectiveSpaceBase(int dim, std::map<std::string, int> bindings, std::string hyperplane)
    : dim_(dim), hyperplane_(std::move(hyperplane)), bindings_(std::move(bindings)) {
    if (dim < 0) throw DomainError("base dimension must be nonnegative");
    if (bindings_.contains(hyperplane_)) throw DomainError("cannot rebind the hyperplane symbol");
    ring_ = Ring::make({Symbol{hyperplane_, 1, SymbolKind::Class}}, dim);
}

int ProjectiveSpaceBase::l_multiple() const {
    auto it = bindings_.find("L");
    return it == bindings_.end() ? 0 : it->second;
}

int BaseModel::dim() const {
    return std::visit([](const auto& b) { return b.dim(); }, impl_);
}

const RingPtr& BaseModel::ring() const {
    return std::visit([](const auto& b) -> const RingPtr& { return b.ring(); }, impl_);
}

ChowPoly BaseModel::divisor(const std::string& name) const {
    if (is_formal()) return ChowPoly::generator(ring(), name);
    const auto& p = projective();
    if (name == p.hyperplane()) return ChowPoly::generator(ring(), name);
    auto it = p.bindings().find(name);
    if (it == p.bindings().end()) throw SpecializationError("divisor '" + name + "' is not bound on P^" + std::to_string(p.dim()));
    return scale(ChowPoly::generator(ring(), p.hyperplane()), it->second);
}

ChowPoly BaseModel::apply_relations(const ChowPoly& cls) const {
    if (!is_formal() || !formal().fano() || formal().dim() == 0) return cls;
    return substitute(cls, "L", ChowPoly::generator(ring(), FormalBase::chern_symbol(1)));
}

ChowPoly chern_polynomial(const BaseModel& base) {
    const RingPtr& ring = base.ring();
    ChowPoly c = ChowPoly::constant(ring, 1);
    if (base.is_formal()) {
        for (int i = 1; i <= base.dim(); ++i) c += ChowPoly::generator(ring, FormalBase::chern_symbol(i));
        return c;
    }
    const auto& p = base.projective();
    return pow(c + ChowPoly::generator(ring, p.hyperplane()), static_cast<unsigned>(p.dim() + 1));
}

Rational integrate(const ProjectiveSpaceBase& base, const ChowPoly& cls) {
    const ChowPoly local = [&] {
        try {
            return cls.in_ring(base.ring());
        } catch (const ContextError&) {
            throw SpecializationError("class must be specialized to P^" + std::to_string(base.dim()) + " before integration");
        }
    }();
    // The only monomial of weight m is h^m.
    const ChowPoly top = component(local, base.dim());
    return top.is_zero() ? Rational(0) : top.terms().begin()->second;
}

Rational integrate(const BaseModel& base, const ChowPoly& cls) {
    if (base.is_formal()) throw ModeError("integration needs a base with a degree map (P^m); this base is formal");
    return integrate(base.projective(), cls);
}

ChowPoly specialize(const ChowPoly& formal_cls, const ProjectiveSpaceBase& base) {
    static const std::regex chern_name{R"(c([1-9][0-9]*))"};
    const RingPtr& src = formal_cls.ring();
    const RingPtr& target = base.ring();
    if (src->bound() < base.dim()) {
        throw SpecializationError("a class truncated at codim " + std::to_string(src->bound()) +
                                  " cannot be specialized to P^" + std::to_string(base.dim()));
    }
    const ChowPoly c_target = chern_polynomial(BaseModel(base));
    const ChowPoly h = ChowPoly::generator(target, base.hyperplane());
    std::map<std::string, ChowPoly> images;
    for (const auto& s : src->symbols()) {
        if (!formal_cls.involves(s.name)) continue;
        std::smatch match;
        if (std::regex_match(s.name, match, chern_name) && s.degree == std::stoi(match[1].str())) {
            const int i = s.degree;
            images.emplace(s.name, i <= base.dim() ? component(c_target, i) : ChowPoly(target));
            continue;
        }
        if (s.degree == 1) {
            auto it = base.bindings().find(s.name);
            if (it != base.bindings().end()) {
                images.emplace(s.name, scale(h, it->second));
                continue;
            }
            if (s.name == base.hyperplane()) {
                images.emplace(s.name, h);
                continue;
            }
        }
        throw SpecializationError("cannot specialize symbol '" + s.name + "' to P^" + std::to_string(base.dim()));
    }
    return substitute_all(formal_cls, images, target);
}

} // namespace relchern
