#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "relchern/chow_poly.hpp"

namespace relchern {

/// A base known only through free symbols: c_1..c_m (named c1..cm) and divisor classes.
class FormalBase {
public:
    /// `fano` renders every class with L replaced by c1 (L = -K_X).
    explicit FormalBase(int dim, std::vector<std::string> divisors = {"L"}, bool fano = false);

    int dim() const noexcept { return dim_; }
    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<std::string>& divisors() const noexcept { return divisors_; }
    bool fano() const noexcept { return fano_; }

    static std::string chern_symbol(int i) { return "c" + std::to_string(i); }

private:
    int dim_;
    std::vector<std::string> divisors_;
    bool fano_;
    RingPtr ring_;
};

/// P^m with hyperplane class h; divisor symbols are bound to integer multiples of h.
class ProjectiveSpaceBase {
public:
    ProjectiveSpaceBase(int dim, int l_multiple, std::string hyperplane = "h");
    ProjectiveSpaceBase(int dim, std::map<std::string, int> bindings, std::string hyperplane = "h");

    int dim() const noexcept { return dim_; }
    const RingPtr& ring() const noexcept { return ring_; }
    const std::string& hyperplane() const noexcept { return hyperplane_; }
    const std::map<std::string, int>& bindings() const noexcept { return bindings_; }
    /// k with L = k h (0 when L is unbound).
    int l_multiple() const;

private:
    int dim_;
    std::string hyperplane_;
    std::map<std::string, int> bindings_;
    RingPtr ring_;
};

class BaseModel {
public:
    BaseModel(FormalBase base) : impl_(std::move(base)) {}
    BaseModel(ProjectiveSpaceBase base) : impl_(std::move(base)) {}

    bool is_formal() const { return std::holds_alternative<FormalBase>(impl_); }
    bool supports_integration() const { return !is_formal(); }
    const FormalBase& formal() const { return std::get<FormalBase>(impl_); }
    const ProjectiveSpaceBase& projective() const { return std::get<ProjectiveSpaceBase>(impl_); }

    int dim() const;
    const RingPtr& ring() const;
    /// The class of a named divisor: a free symbol on a formal base, k h on P^m.
    ChowPoly divisor(const std::string& name) const;
    /// Render-time relations (L = c1 on a Fano formal base); identity otherwise.
    ChowPoly apply_relations(const ChowPoly& cls) const;

private:
    std::variant<FormalBase, ProjectiveSpaceBase> impl_;
};

/// c(TX): 1 + c1 + ... + cm on a formal base, (1+h)^{m+1} on P^m.
ChowPoly chern_polynomial(const BaseModel& base);

/// Degree of the codim-m part.  Throws SpecializationError if symbols other than h remain.
Rational integrate(const ProjectiveSpaceBase& base, const ChowPoly& cls);
/// As above; throws ModeError for a formal base.
Rational integrate(const BaseModel& base, const ChowPoly& cls);

/// c_i -> component i of c(P^m), divisors -> k h.  Throws SpecializationError on unknown symbols.
ChowPoly specialize(const ChowPoly& formal_cls, const ProjectiveSpaceBase& base);

} // namespace relchern
