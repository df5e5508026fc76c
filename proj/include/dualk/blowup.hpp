#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dualk/snc_divisor.hpp"

namespace dualk {

enum class BlowupKind {
    stratum_component,     // center is a connected component of some E_I, |I| >= 2
    point_on_double_curve, // n = 3, a general point of a double curve
};

std::string to_string(BlowupKind kind);

struct BlowupRecord {
    BlowupKind kind = BlowupKind::stratum_component;
    std::string center;        // id of the blown-up stratum component or curve
    std::string center_subset; // its subset, by component labels
    std::string new_component; // label of the exceptional divisor
    std::vector<std::string> removed;
    std::vector<std::string> added;
    /// |I| of the center and the number of components of bad strata at that
    /// level before and after the blowup.
    std::size_t level = 0;
    std::size_t bad_before = 0;
    std::size_t bad_after = 0;
};

struct BlowupResult {
    SncDivisor divisor;
    BlowupRecord record;
};

/// Blows up a component of E_I. Combinatorially this is the stellar
/// subdivision of the dual complex at the corresponding cell.
BlowupResult blowup_stratum_component(const SncDivisor& d, const std::string& center);

/// Blows up a point on a double curve of a threefold away from triple
/// points. The dual complex gains a triangle glued along the curve's edge.
BlowupResult blowup_point_on_double_curve(const SncDivisor& d, const std::string& curve);

struct Resolution {
    SncDivisor divisor;
    std::vector<BlowupRecord> steps;
};

/// Blows up components of the deepest bad stratum until every nonempty E_I
/// is connected. Within a bad E_I the ids are sorted and all but the last are
/// blown up. Throws SncError(NonTermination) if more than max_blowups
/// blowups would be needed.
Resolution resolve_to_simplicial(const SncDivisor& d, std::size_t max_blowups = 10000);

/// Re-applies recorded blowups by center id.
SncDivisor replay(const SncDivisor& d, const std::vector<BlowupRecord>& steps);

} // namespace dualk
