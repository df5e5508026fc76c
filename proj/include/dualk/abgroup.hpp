#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dualk/error.hpp"
#include "dualk/int_matrix.hpp"

namespace dualk {

/// Finitely generated abelian group Z^r + Z/t_1 + ... + Z/t_k in invariant
/// factor form (t_i >= 2, t_i | t_{i+1}).
///
/// Canonical generators are numbered free ones first, then one generator per
/// torsion factor in order. Homomorphisms and coordinates below all refer to
/// this numbering.
class FgAbGroup {
public:
    FgAbGroup() = default;

    static FgAbGroup free(std::size_t rank);
    /// Z/order; order 0 gives Z and order 1 the trivial group.
    static FgAbGroup cyclic(const Integer& order);
    /// Normalizes an arbitrary list of cyclic orders (0 meaning Z).
    static FgAbGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders);

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    std::size_t generator_count() const { return free_rank_ + torsion_.size(); }
    /// Order of canonical generator k, 0 for free generators.
    Integer generator_order(std::size_t k) const;
    Integer torsion_order() const;

    bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_free() const { return torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }

    FgAbGroup torsion_subgroup() const;

    /// Relation matrix presenting this group on its canonical generators.
    IntMatrix relations() const;

    /// "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/4".
    std::string to_string() const;

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

/// Cokernel of `relations`, whose rows index `generators` generators.
FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators);

FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups);

/// Homomorphism given by the images of the source's canonical generators,
/// one column per source generator, expressed in target coordinates.
class Hom {
public:
    /// The map 0 -> 0.
    Hom() = default;
    /// Throws InvalidHom when a torsion generator of order t is not sent into
    /// the t-torsion of the target.
    Hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    static Hom zero(FgAbGroup source, FgAbGroup target);

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    /// True when every image is zero in the target.
    bool is_zero() const;

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

class InvalidHom : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// after ∘ before
Hom compose(const Hom& after, const Hom& before);

struct HomAnalysis {
    FgAbGroup kernel;
    FgAbGroup image;
    FgAbGroup cokernel;
};

HomAnalysis hom_analyze(const Hom& h);

/// The group L / N for lattices N ⊆ L ⊆ Z^d, each given by spanning columns.
///
/// Keeps enough of the reduction to translate vectors of L into canonical
/// coordinates of the quotient and back.
class Subquotient {
public:
    Subquotient(const IntMatrix& numerator_span, const IntMatrix& denominator_span);

    const FgAbGroup& group() const { return group_; }
    std::size_t ambient_dimension() const { return ambient_; }

    bool contains(const std::vector<Integer>& x) const;
    /// Canonical coordinates of the class of x; torsion coordinates reduced
    /// into [0, t). Throws if x is not in the numerator lattice.
    std::vector<Integer> canonical_coordinates(const std::vector<Integer>& x) const;
    /// Ambient representatives of the canonical generators, as columns.
    const IntMatrix& generator_lifts() const { return lifts_; }

private:
    std::vector<Integer> lattice_coordinates(const std::vector<Integer>& x, bool& ok) const;

    std::size_t ambient_ = 0;
    // Numerator reduction: U_num * span * V = diag(num_factors_).
    IntMatrix num_u_;
    std::vector<Integer> num_factors_;
    // Quotient reduction in lattice coordinates.
    IntMatrix quot_u_;
    std::vector<std::size_t> canonical_index_; // canonical generator -> row of quot_u_
    std::vector<Integer> canonical_order_;
    IntMatrix lifts_;
    FgAbGroup group_;
};

/// Spanning columns, in ambient coordinates of h.source(), of the preimage
/// lattice of ker(h) (it contains the source's own relations).
IntMatrix kernel_lift(const Hom& h);

/// ker(out) / im(in) at the middle group; `in.target()` must equal
/// `out.source()`. Throws ValidationError when out∘in is nonzero.
Subquotient homology_at(const Hom& in, const Hom& out);

/// Canonical coordinates in `g` of an integer vector (reduces torsion slots).
std::vector<Integer> reduce_in(const FgAbGroup& g, std::vector<Integer> x);

} // namespace dualk
