#pragma once

#include <cstddef>
#include <vector>

#include "dualk/abgroup.hpp"
#include "dualk/error.hpp"
#include "dualk/int_matrix.hpp"

namespace dualk {

class NonComplexError : public ValidationError {
public:
    NonComplexError(int degree, const std::string& what)
        : ValidationError(what), degree_(degree)
    {
    }
    int degree() const { return degree_; }

private:
    int degree_;
};

/// Bounded chain complex of free abelian groups C_lo .. C_hi with
/// boundaries ∂_d : C_d -> C_{d-1}.
///
/// Cohomology is always taken of the degreewise transpose: H^i is
/// ker(∂_{i+1}^T) / im(∂_i^T).
class ChainComplex {
public:
    ChainComplex() = default;
    /// boundaries[k] is ∂ from degree min_degree+k+1 to min_degree+k and must
    /// be ranks[k] x ranks[k+1]. Shapes are checked here; ∂∘∂ = 0 is checked by
    /// validate_complex so that broken complexes can still be represented.
    ChainComplex(int min_degree, std::vector<std::size_t> ranks, std::vector<IntMatrix> boundaries);

    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(ranks_.size()) - 1; }
    bool in_range(int d) const { return d >= min_degree_ && d <= max_degree(); }

    std::size_t rank(int d) const;
    /// ∂_d : C_d -> C_{d-1}; a correctly shaped zero matrix outside the stored range.
    IntMatrix boundary(int d) const;

    friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

private:
    int min_degree_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> boundaries_;
};

/// Throws NonComplexError naming the degree d with ∂_{d-1}∘∂_d != 0, or with a
/// shape mismatch.
void validate_complex(const ChainComplex& c);

FgAbGroup homology(const ChainComplex& c, int degree);
FgAbGroup cohomology(const ChainComplex& c, int degree);

long euler_characteristic(const ChainComplex& c);

} // namespace dualk
