#include "dualk/blowup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "dualk/dual_complex.hpp"

namespace dualk {

namespace {

std::set<std::string> all_ids(const SncDivisor& d)
{
    std::set<std::string> ids(d.components().begin(), d.components().end());
    for (const auto& [subset, list] : d.strata())
        for (const StratumComponent& c : list)
            ids.insert(c.id);
    return ids;
}

std::string fresh_label(const std::set<std::string>& used)
{
    for (std::size_t k = 1;; ++k) {
        std::string label = "x" + std::to_string(k);
        if (!used.contains(label))
            return label;
    }
}

class IdMaker {
public:
    IdMaker(std::set<std::string> used, std::string prefix) : used_(std::move(used)), prefix_(std::move(prefix))
    {
        used_.insert(prefix_);
    }

    std::string next()
    {
        for (;;) {
            std::string id = prefix_ + "." + std::to_string(++counter_);
            if (used_.insert(id).second)
                return id;
        }
    }

private:
    std::set<std::string> used_;
    std::string prefix_;
    std::size_t counter_ = 0;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet without(const IndexSet& s, int i)
{
    return set_minus(s, IndexSet{i});
}

} // namespace

std::string to_string(BlowupKind kind)
{
    switch (kind) {
    case BlowupKind::stratum_component: return "stratum_component";
    case BlowupKind::point_on_double_curve: return "point_on_double_curve";
    }
    return "unknown";
}

BlowupResult blowup_stratum_component(const SncDivisor& d, const std::string& center)
{
    validate_snc(d);
    const auto loc = d.locate(center);
    if (!loc || loc->is_component())
        throw SncError(SncErrorKind::UnknownCenter, center,
                       "'" + center + "' is not a component of any multiple intersection");
    const IndexSet I = loc->subset;
    const std::size_t level = I.size();

    BlowupRecord record;
    record.kind = BlowupKind::stratum_component;
    record.center = center;
    record.center_subset = d.subset_label(I);
    record.level = level;
    record.bad_before = bad_component_count(d, level);

    // Star of the center: every stratum component whose I-ancestor is the center.
    struct StarCell {
        IndexSet subset;
        std::string id;
    };
    std::vector<StarCell> star;
    std::set<std::string> in_star;
    for (const auto& [subset, list] : d.strata()) {
        if (!std::includes(subset.begin(), subset.end(), I.begin(), I.end()))
            continue;
        for (const StratumComponent& c : list)
            if (ancestor(d, c.id, I) == center) {
                star.push_back({subset, c.id});
                in_star.insert(c.id);
            }
    }

    const std::set<std::string> used = all_ids(d);
    const std::string label = fresh_label(used);
    IdMaker ids(used, label);
    const int m = static_cast<int>(d.component_count());
    record.new_component = label;

    std::vector<std::string> components = d.components();
    components.push_back(label);

    StrataMap strata;
    for (const auto& [subset, list] : d.strata())
        for (const StratumComponent& c : list) {
            if (in_star.contains(c.id))
                record.removed.push_back(c.id);
            else
                strata[subset].push_back(c);
        }

    // New cell for (W, J_I): W in the star, J_I a proper subset of I.
    // It lies over (S \ I) ∪ J_I ∪ {m}; (center, ∅) is the new vertex itself.
    std::map<std::pair<std::string, IndexSet>, std::string> cell_id;
    auto id_of = [&](const std::string& w, const IndexSet& j_i) -> const std::string& {
        if (w == center && j_i.empty())
            return label;
        return cell_id.at({w, j_i});
    };

    // Faces must exist before the cells that use them: go by dimension.
    std::vector<std::pair<StarCell, IndexSet>> pending;
    for (const StarCell& w : star)
        for (unsigned mask = 0; mask + 1 < (1u << level); ++mask) {
            IndexSet j_i;
            for (std::size_t b = 0; b < level; ++b)
                if (mask & (1u << b))
                    j_i.push_back(I[b]);
            if (w.id == center && j_i.empty())
                continue;
            pending.emplace_back(w, j_i);
        }
    std::stable_sort(pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
        return set_minus(a.first.subset, I).size() + a.second.size() <
               set_minus(b.first.subset, I).size() + b.second.size();
    });

    for (const auto& [w, j_i] : pending) {
        const IndexSet rest = set_minus(w.subset, I);
        const IndexSet j = set_union(rest, j_i);
        IndexSet subset = j;
        subset.push_back(m);

        StratumComponent cell;
        cell.id = ids.next();
        cell.parents[m] = j.size() == 1 ? d.components()[static_cast<std::size_t>(j[0])] : ancestor(d, w.id, j);
        for (int x : j_i)
            cell.parents[x] = id_of(w.id, without(j_i, x));
        for (int x : rest) {
            const std::string parent_w = d.component_by_id(w.id).parents.at(x);
            cell.parents[x] = id_of(parent_w, j_i);
        }
        cell_id[{w.id, j_i}] = cell.id;
        record.added.push_back(cell.id);
        strata[subset].push_back(std::move(cell));
    }

    SncDivisor out(d.n(), std::move(components), std::move(strata));
    record.bad_after = bad_component_count(out, level);
    return {std::move(out), std::move(record)};
}

BlowupResult blowup_point_on_double_curve(const SncDivisor& d, const std::string& curve)
{
    validate_snc(d);
    if (d.n() != 3)
        throw SncError(SncErrorKind::WrongDimension, std::to_string(d.n()),
                       "point blowups on double curves need dim X = 3, got " + std::to_string(d.n()));
    const auto loc = d.locate(curve);
    if (!loc || loc->subset.size() != 2)
        throw SncError(SncErrorKind::UnknownCurve, curve, "'" + curve + "' is not a double curve");
    const int i = loc->subset[0];
    const int j = loc->subset[1];

    BlowupRecord record;
    record.kind = BlowupKind::point_on_double_curve;
    record.center = curve;
    record.center_subset = d.subset_label(loc->subset);
    record.level = 2;
    record.bad_before = bad_component_count(d, 2);

    const std::set<std::string> used = all_ids(d);
    const std::string label = fresh_label(used);
    IdMaker ids(used, label);
    const int m = static_cast<int>(d.component_count());
    record.new_component = label;

    std::vector<std::string> components = d.components();
    components.push_back(label);
    StrataMap strata = d.strata();

    StratumComponent line_i{ids.next(), {{i, label}, {m, components[static_cast<std::size_t>(i)]}}};
    StratumComponent line_j{ids.next(), {{j, label}, {m, components[static_cast<std::size_t>(j)]}}};
    StratumComponent point{ids.next(), {{i, line_j.id}, {j, line_i.id}, {m, curve}}};
    record.added = {line_i.id, line_j.id, point.id};
    strata[{i, m}].push_back(std::move(line_i));
    strata[{j, m}].push_back(std::move(line_j));
    strata[{i, j, m}].push_back(std::move(point));

    SncDivisor out(d.n(), std::move(components), std::move(strata));
    record.bad_after = bad_component_count(out, 2);
    return {std::move(out), std::move(record)};
}

Resolution resolve_to_simplicial(const SncDivisor& d, std::size_t max_blowups)
{
    validate_snc(d);
    Resolution res{d, {}};
    for (;;) {
        const IndexSet* worst = nullptr;
        for (const auto& [subset, list] : res.divisor.strata())
            if (list.size() >= 2 && (!worst || subset.size() > worst->size()))
                worst = &subset;
        if (!worst)
            return res;

        std::vector<std::string> sorted;
        for (const StratumComponent& c : res.divisor.stratum(*worst))
            sorted.push_back(c.id);
        std::sort(sorted.begin(), sorted.end());
        sorted.pop_back();
        for (const std::string& id : sorted) {
            if (res.steps.size() >= max_blowups)
                throw SncError(SncErrorKind::NonTermination, id,
                               "resolution needs more than " + std::to_string(max_blowups) + " blowups");
            BlowupResult step = blowup_stratum_component(res.divisor, id);
            res.divisor = std::move(step.divisor);
            res.steps.push_back(std::move(step.record));
        }
    }
}

SncDivisor replay(const SncDivisor& d, const std::vector<BlowupRecord>& steps)
{
    SncDivisor current = d;
    for (const BlowupRecord& r : steps) {
        BlowupResult step = r.kind == BlowupKind::stratum_component
                                ? blowup_stratum_component(current, r.center)
                                : blowup_point_on_double_curve(current, r.center);
        current = std::move(step.divisor);
    }
    return current;
}

} // namespace dualk
