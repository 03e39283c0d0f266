#pragma once

#include <optional>
#include <vector>

#include "csp/int_matrix.hpp"

namespace csp::zlinalg {

// Finitely generated abelian group in invariant-factor form:
// Z/d1 x ... x Z/dt x Z^rank with d1 | d2 | ... , each di >= 2.
//
// Elements are canonical coordinate vectors of length dim() = t + rank,
// torsion coordinates reduced into [0, di). The group remembers how it was
// presented (ngens user generators modulo a relation lattice) and converts
// between user and canonical coordinates with unimodular transforms.
class AbelianGroup {
public:
    using Elem = std::vector<Int>;

    // Quotient of Z^ngens by the row lattice of rels (rels may have 0 rows).
    static AbelianGroup from_relations(std::size_t ngens, const IntMatrix& rels);
    static AbelianGroup free_group(std::size_t rank);
    // moduli: 0 means an infinite cyclic factor, d >= 1 a finite one.
    static AbelianGroup direct_sum(const std::vector<Int>& moduli);

    std::size_t dim() const { return torsion_.size() + rank_; }
    std::size_t torsion_count() const { return torsion_.size(); }
    std::size_t rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    std::size_t ngens() const { return ngens_; }

    // Modulus of a canonical coordinate: di for torsion, 0 for free.
    Int modulus(std::size_t k) const {
        return k < torsion_.size() ? torsion_[k] : Int(0);
    }

    Elem zero() const { return Elem(dim(), Int(0)); }
    Elem encode(const std::vector<Int>& user_coords) const;
    std::vector<Int> decode(const Elem& canonical) const;
    // Canonical generator k as an element.
    Elem basis(std::size_t k) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scale(const Int& n, const Elem& a) const;
    Elem reduce(Elem a) const;
    bool is_zero(const Elem& a) const;

    // Order of an element; 0 means infinite.
    Int element_order(const Elem& a) const;
    // lcm of the invariant factors (1 for torsion-free).
    Int torsion_exponent() const;
    bool finite() const { return rank_ == 0; }
    // Group order; 0 means infinite.
    Int order() const;
    std::vector<Elem> enumerate(unsigned long budget) const;

    std::string render() const;  // "Z^2 x Z/3" style

private:
    std::vector<Int> torsion_;
    std::size_t rank_ = 0;
    std::size_t ngens_ = 0;
    IntMatrix to_canon_;        // ngens x ngens unimodular (V from SNF)
    IntMatrix from_canon_;      // its inverse
    std::vector<std::size_t> kept_;  // columns of V kept as canonical coords
};

// Submodule of an AbelianGroup, canonical form = HNF basis of the preimage
// lattice in Z^dim (which always contains the torsion relation lattice).
class Submodule {
public:
    Submodule(const AbelianGroup& ambient, std::vector<AbelianGroup::Elem> gens);

    const AbelianGroup& ambient() const { return ambient_; }
    const std::vector<AbelianGroup::Elem>& gens() const { return gens_; }
    const IntMatrix& lattice() const { return lattice_; }

    bool contains(const AbelianGroup::Elem& e) const;
    // Expression of e over gens() if e is a member.
    std::optional<std::vector<Int>> coords_of(const AbelianGroup::Elem& e) const;

    Submodule meet(const Submodule& other) const;
    bool equals(const Submodule& other) const;
    bool is_whole() const;

    // Ambient / this, with a projection for ambient elements.
    struct Quotient {
        AbelianGroup group;
        // maps an ambient element to quotient canonical coordinates
        AbelianGroup::Elem project(const AbelianGroup& ambient,
                                   const AbelianGroup::Elem& e) const;
    };
    Quotient quotient() const;

    // Index in the ambient group; 0 means infinite.
    Int index() const;

private:
    AbelianGroup ambient_;
    std::vector<AbelianGroup::Elem> gens_;
    IntMatrix lattice_;  // HNF rows in Z^dim
};

// The whole ambient as a submodule generated by canonical generators.
Submodule whole_submodule(const AbelianGroup& a);
// n * A as a submodule.
Submodule multiple_submodule(const AbelianGroup& a, const Int& n);

// Hom(A, B) with element-as-map evaluation. The user generators of `group`
// are the nonzero cyclic pieces Hom(cyclic_i(A), cyclic_j(B)) in row-major
// (i, j) order.
class HomGroup {
public:
    HomGroup(AbelianGroup a, AbelianGroup b);

    const AbelianGroup& group() const { return group_; }
    const AbelianGroup& domain() const { return domain_; }
    const AbelianGroup& codomain() const { return codomain_; }

    // Evaluate the homomorphism f (canonical coords of group()) at x in A.
    AbelianGroup::Elem eval(const AbelianGroup::Elem& f,
                            const AbelianGroup::Elem& x) const;

    // Build the hom with prescribed values on the canonical generators of A;
    // nullopt if the values do not define a homomorphism.
    std::optional<AbelianGroup::Elem>
    from_values(const std::vector<AbelianGroup::Elem>& values) const;

private:
    struct Piece {
        std::size_t i, j;  // domain coord, codomain coord
        Int gen_image;    // generator sends e_i to gen_image * e_j
    };
    AbelianGroup domain_, codomain_;
    AbelianGroup group_;
    std::vector<Piece> pieces_;
};

// Smallest-by-construction M2 (a multiple of m1) with
// W ∩ M2*H ⊆ m1*W, verified via submodule meet + membership.
Int choose_m2(const AbelianGroup& h, const Submodule& w, const Int& m1);

} // namespace csp::zlinalg
