#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dualk/chain_complex.hpp"
#include "dualk/snc_divisor.hpp"
#include "dualk/spectral_page.hpp"

namespace dualk {

/// A d-cell of the dual complex, one per component of a (d+1)-fold intersection.
struct DualCell {
    IndexSet subset;
    std::string id;
    /// faces[m] indexes the (d-1)-cell obtained by dropping subset[m]; the
    /// incidence number with that face is (-1)^m.
    std::vector<std::size_t> faces;
};

/// Regular CW complex D(E). Cells are ordered by subset, then by the order of
/// the stratum list, so output is stable for a given divisor.
class DualComplex {
public:
    explicit DualComplex(std::vector<std::vector<DualCell>> cells);

    /// Number of stored dimensions (top dimension + 1); 0 for an empty complex.
    std::size_t dimension_count() const { return cells_.size(); }
    const std::vector<DualCell>& cells(std::size_t dim) const { return cells_.at(dim); }
    std::size_t cell_count(std::size_t dim) const { return dim < cells_.size() ? cells_[dim].size() : 0; }

    /// Cellular chain complex, degrees 0 .. top.
    ChainComplex chain_complex() const;

    /// Vertices reached by walking faces down to dimension 0, sorted.
    std::vector<std::size_t> vertex_set(std::size_t dim, std::size_t index) const;

private:
    std::vector<std::vector<DualCell>> cells_;
};

DualComplex build_dual_complex(const SncDivisor& d);

/// C_•(Δ^alt_• E) with ∂_p = Σ_i (-1)^i d_i, built from the face maps of
/// the semisimplicial scheme rather than from cell incidences.
ChainComplex alt_chain_complex(const SncDivisor& d);

/// One-row E_1 page E_1^{p,0} = H^0(Δ^alt_p E, Z) with d_1 the transposed
/// alternating boundary, supported on 0 <= p <= n-1, q = 0.
SpectralPage cech_page(const SncDivisor& d);

/// H^i(D(E), Z) for i = 0 .. n-1.
std::vector<FgAbGroup> dual_cohomology(const SncDivisor& d);

struct BadIntersection {
    IndexSet subset;
    std::size_t count = 0;
};

struct SimplicialityReport {
    std::vector<BadIntersection> bad;
    bool is_simplicial = true;
};

SimplicialityReport find_bad_intersections(const SncDivisor& d);

/// Number of stratum components at `level` (= |I|) belonging to a bad E_I.
std::size_t bad_component_count(const SncDivisor& d, std::size_t level);

} // namespace dualk
