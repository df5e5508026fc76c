#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualk/kh_report.hpp"

namespace dualk {

/// Du Bois invariants b^{p,q} of one singular point.
struct DuBoisTable {
    std::string point = "x0";
    bool isolated = true;
    std::map<std::pair<int, int>, std::size_t> entries;

    std::optional<std::size_t> at(int p, int q) const;
};

class MissingEntry : public ValidationError {
public:
    MissingEntry(int p, int q, const std::string& point);
    int p() const { return p_; }
    int q() const { return q_; }

private:
    int p_;
    int q_;
};

/// The NK layer is only described for isolated singular points.
class NonIsolatedSingularity : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// NK_{1-n}(U) = V ⊗ tQ[t] with dim_k V = b^{0,n-1}.
struct NkDescriptor {
    std::size_t v_dim = 0;
    std::string shape;
    bool is_zero() const { return v_dim == 0; }
};

NkDescriptor nk_descriptor(const DuBoisTable& b, int n);

/// 0 -> H^{n-1}_cdh(U, O) -> K_{1-n}(X) -> KH_{1-n}(X) -> 0 where the kernel
/// is a k-vector space of dimension v_dim (summed over singular points).
struct KReport {
    KhReport kh;
    std::size_t v_dim = 0;
    std::vector<NkDescriptor> nk; // one per singular point
    std::string nk_shape;
    bool surjectivity_note = true; // K_{2-n}(X) -> KH_{2-n}(X) is onto
    bool k_equals_kh = false;
    bool n3_corollary = false;
    std::string k_shape;
};

KReport k_report(const KhReport& kh, const std::vector<DuBoisTable>& tables);
KReport k_report(const KhReport& kh, const DuBoisTable& table);

} // namespace dualk
