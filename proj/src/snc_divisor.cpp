#include "dualk/snc_divisor.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace dualk {

namespace {

const std::vector<StratumComponent> kEmptyStratum;

IndexSet without(const IndexSet& s, int i)
{
    IndexSet out;
    out.reserve(s.size());
    for (int v : s)
        if (v != i)
            out.push_back(v);
    return out;
}

} // namespace

std::string to_string(SncErrorKind kind)
{
    switch (kind) {
    case SncErrorKind::DimensionBound: return "DimensionBound";
    case SncErrorKind::ClosureViolation: return "ClosureViolation";
    case SncErrorKind::ContainmentMismatch: return "ContainmentMismatch";
    case SncErrorKind::DuplicateId: return "DuplicateId";
    case SncErrorKind::UnknownId: return "UnknownId";
    case SncErrorKind::MalformedSubset: return "MalformedSubset";
    case SncErrorKind::UnknownCenter: return "UnknownCenter";
    case SncErrorKind::WrongDimension: return "WrongDimension";
    case SncErrorKind::UnknownCurve: return "UnknownCurve";
    case SncErrorKind::NonTermination: return "NonTermination";
    }
    return "SncError";
}

SncError::SncError(SncErrorKind kind, std::string subject, const std::string& detail)
    : ValidationError(to_string(kind) + ": " + detail), kind_(kind), subject_(std::move(subject)), detail_(detail)
{
}

SncDivisor::SncDivisor(int n, std::vector<std::string> components, StrataMap strata)
    : n_(n), components_(std::move(components))
{
    for (auto& [subset, list] : strata) {
        if (list.empty())
            continue;
        if (subset.size() == 2) {
            for (StratumComponent& c : list)
                for (std::size_t k = 0; k < 2; ++k) {
                    const int dropped = subset[k];
                    const int kept = subset[1 - k];
                    if (!c.parents.contains(dropped) && kept >= 0 &&
                        static_cast<std::size_t>(kept) < components_.size())
                        c.parents[dropped] = components_[static_cast<std::size_t>(kept)];
                }
        }
        strata_.emplace(subset, std::move(list));
    }
    for (std::size_t i = 0; i < components_.size(); ++i)
        index_.try_emplace(components_[i], Location{IndexSet{static_cast<int>(i)}, 0});
    for (const auto& [subset, list] : strata_)
        for (std::size_t j = 0; j < list.size(); ++j)
            index_.try_emplace(list[j].id, Location{subset, j});
}

const std::vector<StratumComponent>& SncDivisor::stratum(const IndexSet& subset) const
{
    auto it = strata_.find(subset);
    return it == strata_.end() ? kEmptyStratum : it->second;
}

std::optional<SncDivisor::Location> SncDivisor::locate(const std::string& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const StratumComponent& SncDivisor::component_by_id(const std::string& id) const
{
    auto loc = locate(id);
    if (!loc || loc->is_component())
        throw SncError(SncErrorKind::UnknownId, id, "no stratum component with id '" + id + "'");
    return strata_.at(loc->subset)[loc->position];
}

std::size_t SncDivisor::depth() const
{
    std::size_t d = components_.empty() ? 0 : 1;
    for (const auto& [subset, list] : strata_)
        d = std::max(d, subset.size());
    return d;
}

std::string SncDivisor::subset_label(const IndexSet& subset) const
{
    std::string out = "{";
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (k)
            out += ",";
        const int i = subset[k];
        if (i >= 0 && static_cast<std::size_t>(i) < components_.size())
            out += components_[static_cast<std::size_t>(i)];
        else
            out += "#" + std::to_string(i);
    }
    return out + "}";
}

std::string ancestor(const SncDivisor& d, const std::string& id, const IndexSet& subset)
{
    auto loc = d.locate(id);
    if (!loc)
        throw SncError(SncErrorKind::UnknownId, id, "unknown id '" + id + "'");
    std::string current = id;
    IndexSet current_set = loc->subset;
    for (int i : loc->subset) {
        if (std::binary_search(subset.begin(), subset.end(), i))
            continue;
        const StratumComponent& c = d.component_by_id(current);
        current = c.parents.at(i);
        current_set = without(current_set, i);
    }
    if (current_set != subset)
        throw SncError(SncErrorKind::MalformedSubset, d.subset_label(subset),
                       "subset is not contained in the subset of '" + id + "'");
    return current;
}

void validate_snc(const SncDivisor& d)
{
    const int m = static_cast<int>(d.component_count());
    if (d.n() < 1)
        throw SncError(SncErrorKind::DimensionBound, std::to_string(d.n()),
                       "ambient dimension must be at least 1");

    std::set<std::string> seen;
    auto claim = [&](const std::string& id) {
        if (id.empty())
            throw SncError(SncErrorKind::DuplicateId, id, "ids must be nonempty");
        if (!seen.insert(id).second)
            throw SncError(SncErrorKind::DuplicateId, id, "id '" + id + "' is used twice");
    };
    for (const std::string& c : d.components())
        claim(c);
    for (const auto& [subset, list] : d.strata())
        for (const StratumComponent& c : list)
            claim(c.id);

    for (const auto& [subset, list] : d.strata()) {
        for (int i : subset)
            if (i < 0 || i >= m)
                throw SncError(SncErrorKind::UnknownId, "#" + std::to_string(i),
                               "stratum " + d.subset_label(subset) + " references component index " +
                                   std::to_string(i) + ", but there are " + std::to_string(m) +
                                   " components");
        if (subset.size() < 2 || !std::is_sorted(subset.begin(), subset.end()) ||
            std::adjacent_find(subset.begin(), subset.end()) != subset.end())
            throw SncError(SncErrorKind::MalformedSubset, d.subset_label(subset),
                           "stratum subsets need at least two distinct components in increasing order");
    }

    for (const auto& [subset, list] : d.strata())
        if (static_cast<int>(subset.size()) > d.n())
            throw SncError(SncErrorKind::DimensionBound, d.subset_label(subset),
                           d.subset_label(subset) + " is a " + std::to_string(subset.size()) +
                               "-fold intersection but dim X = " + std::to_string(d.n()));

    for (const auto& [subset, list] : d.strata()) {
        if (subset.size() < 3)
            continue;
        for (int i : subset) {
            const IndexSet facet = without(subset, i);
            if (d.stratum(facet).empty())
                throw SncError(SncErrorKind::ClosureViolation, d.subset_label(subset),
                               d.subset_label(subset) + " is nonempty but " +
                                   d.subset_label(facet) + " is empty");
        }
    }

    for (const auto& [subset, list] : d.strata())
        for (const StratumComponent& c : list) {
            if (c.parents.size() != subset.size())
                throw SncError(SncErrorKind::ContainmentMismatch, c.id,
                               "'" + c.id + "' needs one parent per facet of " + d.subset_label(subset));
            for (int i : subset) {
                auto it = c.parents.find(i);
                if (it == c.parents.end())
                    throw SncError(SncErrorKind::ContainmentMismatch, c.id,
                                   "'" + c.id + "' has no parent for dropping " +
                                       d.components()[static_cast<std::size_t>(i)]);
                const IndexSet facet = without(subset, i);
                auto loc = d.locate(it->second);
                if (!loc || loc->subset != facet)
                    throw SncError(SncErrorKind::ContainmentMismatch, c.id,
                                   "parent '" + it->second + "' of '" + c.id +
                                       "' is not a component of " + d.subset_label(facet));
            }
        }

    for (const auto& [subset, list] : d.strata()) {
        if (subset.size() < 3)
            continue;
        for (const StratumComponent& c : list)
            for (int i : subset)
                for (int k : subset) {
                    if (i >= k)
                        continue;
                    const std::string via_i = d.component_by_id(c.parents.at(i)).parents.at(k);
                    const std::string via_k = d.component_by_id(c.parents.at(k)).parents.at(i);
                    if (via_i != via_k)
                        throw SncError(SncErrorKind::ContainmentMismatch, c.id,
                                       "containment of '" + c.id + "' does not commute: '" + via_i +
                                           "' vs '" + via_k + "'");
                }
    }
}

} // namespace dualk
