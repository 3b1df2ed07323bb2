#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace relchern {

using Rational = mpq_class;
using Integer = mpz_class;

enum class SymbolKind {
    /// Counts towards the truncation bound with its degree.
    Class,
    /// Auxiliary variable of an untruncated polynomial ring (x_1..x_m of the pushforward formula).
    Formal,
};

/// A named generator of a ring.  `degree` is the codimension weight.
struct Symbol {
    std::string name;
    int degree = 1;
    SymbolKind kind = SymbolKind::Class;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Canonical symbol order: by degree, then name.
bool symbol_less(const Symbol& a, const Symbol& b);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/**
 * Symbol table plus truncation bound.  A ring is the quotient of Q[symbols] by all
 * monomials whose class weight (sum of degrees over Class symbols) exceeds `bound`.
 * Formal symbols carry no weight and are never truncated.
 *
 * Rings are immutable and shared between the polynomials that live in them; two
 * rings are the same context iff their symbols and bounds agree.
 */
class Ring {
public:
    static RingPtr make(std::vector<Symbol> symbols, int bound);

    int bound() const noexcept { return bound_; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& symbol(std::size_t index) const { return symbols_.at(index); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }

    /// Same symbols, different bound.
    RingPtr with_bound(int bound) const;
    /// Adds symbols (names must be fresh) and sets a new bound.
    RingPtr extended(std::vector<Symbol> extra, int bound) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.bound_ == b.bound_ && a.symbols_ == b.symbols_;
    }

private:
    Ring(std::vector<Symbol> symbols, int bound) : symbols_(std::move(symbols)), bound_(bound) {}

    std::vector<Symbol> symbols_;
    int bound_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector indexed by the ring's symbol positions, keyed first by class weight.
struct Monomial {
    int weight = 0;
    std::vector<std::uint32_t> exps;

    bool is_one() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Ascending weight; within a weight, larger powers of earlier symbols first (L^2, L*c1, c1^2, c2).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.exps > b.exps;
    }
};

/**
 * Element of a truncated graded polynomial ring with exact rational coefficients.
 * Values are immutable; every constructor and operation re-truncates and drops
 * zero coefficients, so structural equality is mathematical equality.
 */
class ChowPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    explicit ChowPoly(RingPtr ring);
    ChowPoly(RingPtr ring, TermMap terms);

    static ChowPoly constant(RingPtr ring, const Rational& value);
    static ChowPoly generator(RingPtr ring, std::string_view name);
    /// c * prod(name_i ^ e_i); names must belong to the ring.
    static ChowPoly monomial(RingPtr ring, const Rational& coeff,
                             std::span<const std::pair<std::string, std::uint32_t>> powers);

    const RingPtr& ring() const noexcept { return ring_; }
    int bound() const noexcept { return ring_->bound(); }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    /// Largest / smallest class weight of a stored term; -1 for zero.
    int max_weight() const;
    int min_weight() const;
    bool is_homogeneous(int weight) const;
    /// Exponent of `name` in the highest such term, 0 if absent.
    std::uint32_t degree_in(std::string_view name) const;
    /// True if any stored term has a nonzero exponent for `name`.
    bool involves(std::string_view name) const;

    /// Re-express in another ring; all involved symbols must exist there with equal degree and kind.
    ChowPoly in_ring(RingPtr target) const;

    friend bool operator==(const ChowPoly& a, const ChowPoly& b);

    ChowPoly operator-() const;
    friend ChowPoly operator+(const ChowPoly& a, const ChowPoly& b);
    friend ChowPoly operator-(const ChowPoly& a, const ChowPoly& b);
    friend ChowPoly operator*(const ChowPoly& a, const ChowPoly& b);
    friend ChowPoly operator*(const Rational& c, const ChowPoly& p);
    ChowPoly& operator+=(const ChowPoly& other);
    ChowPoly& operator-=(const ChowPoly& other);
    ChowPoly& operator*=(const ChowPoly& other);

private:
    void canonicalize();

    RingPtr ring_;
    TermMap terms_;
};

ChowPoly add(const ChowPoly& a, const ChowPoly& b);
ChowPoly mul(const ChowPoly& a, const ChowPoly& b);
ChowPoly pow(const ChowPoly& base, unsigned exponent);
ChowPoly scale(const ChowPoly& p, const Rational& c);

/// num / denom, with denom = 1 + (terms of positive weight).  Throws NonUnitError otherwise.
ChowPoly expand_ratio(const ChowPoly& num, const ChowPoly& denom);

/// d/dx for a Formal symbol x.
ChowPoly partial_derivative(const ChowPoly& p, std::string_view x, unsigned order = 1);

/// Replace x by v; the result lives in v's ring.
ChowPoly substitute(const ChowPoly& p, std::string_view x, const ChowPoly& v);

/// Simultaneous substitution of several symbols; every other involved symbol must exist in `target`.
ChowPoly substitute_all(const ChowPoly& p, const std::map<std::string, ChowPoly>& images,
                        const RingPtr& target);

/// Sum of the terms of class weight exactly k.
ChowPoly component(const ChowPoly& p, int k);

} // namespace relchern
