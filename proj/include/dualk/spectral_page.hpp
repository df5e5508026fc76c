#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "dualk/abgroup.hpp"
#include "dualk/error.hpp"

namespace dualk {

struct Bidegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
};

/// Finite rectangle of a cohomological page, optionally cut by p + q <= total_max.
struct SupportRegion {
    int p_min = 0;
    int p_max = 0;
    int q_min = 0;
    int q_max = 0;
    std::optional<int> total_max;

    bool contains(Bidegree b) const;
    /// First-quadrant region 0 <= p <= p_max, 0 <= q <= q_max, p + q <= total.
    static SupportRegion first_quadrant(int p_max, int q_max, std::optional<int> total = {});
};

class SupportViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MalformedPage : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// One page E_r of a cohomologically indexed spectral sequence. The
/// differential stored at (p, q) leaves that position with bidegree
/// (r, 1 - r). Missing entries are zero groups, missing differentials zero maps.
class SpectralPage {
public:
    SpectralPage(int page_no, SupportRegion support);

    int page_no() const { return page_no_; }
    const SupportRegion& support() const { return support_; }

    /// The group at b, the zero group when unset.
    FgAbGroup at(Bidegree b) const;
    void set(Bidegree b, FgAbGroup group);
    /// Throws MalformedPage when source/target disagree with the stored entries.
    void set_differential(Bidegree from, Hom d);
    std::optional<Hom> differential(Bidegree from) const;

    Bidegree target_of(Bidegree from) const { return {from.p + page_no_, from.q + 1 - page_no_}; }

    const std::map<Bidegree, FgAbGroup>& entries() const { return entries_; }
    const std::map<Bidegree, Hom>& differentials() const { return differentials_; }

    /// Nonzero groups lie inside the support and consecutive differentials
    /// compose to zero.
    void validate() const;

private:
    Hom differential_or_zero(Bidegree from) const;

    int page_no_;
    SupportRegion support_;
    std::map<Bidegree, FgAbGroup> entries_;
    std::map<Bidegree, Hom> differentials_;
};

/// E_2 from an E_1 page whose differentials have bidegree (1, 0):
/// E_2^{p,q} = ker d_1^{p,q} / im d_1^{p-1,q} on every supported position.
SpectralPage e2_page(const SpectralPage& e1, const SupportRegion& support);

enum class Determination { exact, bounded };

std::string to_string(Determination d);

/// E_3^{n-1,0} on a two-row page. When the incoming d_2 is not known to
/// vanish the result is only known to be a quotient of `group`, and the
/// killed part is itself a quotient of `killed_by_quotient_of`.
struct TopCorner {
    FgAbGroup group;
    Determination determination = Determination::exact;
    std::optional<FgAbGroup> killed_by_quotient_of;
    std::size_t rank_min = 0;
    std::size_t rank_max = 0;
};

TopCorner e3_top_corner(const SpectralPage& e2, int n, bool d2_known_zero);

} // namespace dualk
