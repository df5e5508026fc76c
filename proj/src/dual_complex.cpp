#include "dualk/dual_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace dualk {

DualComplex::DualComplex(std::vector<std::vector<DualCell>> cells) : cells_(std::move(cells))
{
    while (!cells_.empty() && cells_.back().empty())
        cells_.pop_back();
}

ChainComplex DualComplex::chain_complex() const
{
    if (cells_.empty())
        return ChainComplex(0, {0}, {});
    std::vector<std::size_t> ranks;
    for (const auto& level : cells_)
        ranks.push_back(level.size());
    std::vector<IntMatrix> boundaries;
    for (std::size_t d = 1; d < cells_.size(); ++d) {
        IntMatrix b(cells_[d - 1].size(), cells_[d].size());
        for (std::size_t c = 0; c < cells_[d].size(); ++c) {
            const auto& faces = cells_[d][c].faces;
            for (std::size_t m = 0; m < faces.size(); ++m)
                b(faces[m], c) += (m % 2 == 0) ? 1 : -1;
        }
        boundaries.push_back(std::move(b));
    }
    return ChainComplex(0, std::move(ranks), std::move(boundaries));
}

std::vector<std::size_t> DualComplex::vertex_set(std::size_t dim, std::size_t index) const
{
    std::set<std::size_t> current{index};
    for (std::size_t d = dim; d > 0; --d) {
        std::set<std::size_t> next;
        for (std::size_t c : current)
            for (std::size_t f : cells_[d][c].faces)
                next.insert(f);
        current = std::move(next);
    }
    return {current.begin(), current.end()};
}

DualComplex build_dual_complex(const SncDivisor& d)
{
    validate_snc(d);
    std::vector<std::vector<DualCell>> cells(d.depth());
    if (cells.empty())
        return DualComplex({});

    std::vector<std::map<std::string, std::size_t>> index(cells.size());
    for (std::size_t i = 0; i < d.component_count(); ++i) {
        cells[0].push_back(DualCell{{static_cast<int>(i)}, d.components()[i], {}});
        index[0].emplace(d.components()[i], i);
    }
    for (std::size_t dim = 1; dim < cells.size(); ++dim)
        for (const auto& [subset, list] : d.strata()) {
            if (subset.size() != dim + 1)
                continue;
            for (const StratumComponent& c : list) {
                DualCell cell{subset, c.id, {}};
                for (int dropped : subset)
                    cell.faces.push_back(index[dim - 1].at(c.parents.at(dropped)));
                index[dim].emplace(c.id, cells[dim].size());
                cells[dim].push_back(std::move(cell));
            }
        }
    return DualComplex(std::move(cells));
}

ChainComplex alt_chain_complex(const SncDivisor& d)
{
    validate_snc(d);
    const std::size_t levels = d.depth();
    if (levels == 0)
        return ChainComplex(0, {0}, {});

    // Δ^alt_p as an ordered list of ids, and the position of each id.
    std::vector<std::vector<std::string>> simplices(levels);
    std::vector<std::map<std::string, std::size_t>> position(levels);
    std::vector<std::vector<IndexSet>> subsets(levels);
    for (std::size_t i = 0; i < d.component_count(); ++i) {
        position[0][d.components()[i]] = i;
        simplices[0].push_back(d.components()[i]);
        subsets[0].push_back({static_cast<int>(i)});
    }
    for (const auto& [subset, list] : d.strata())
        for (const StratumComponent& c : list) {
            const std::size_t p = subset.size() - 1;
            position[p][c.id] = simplices[p].size();
            simplices[p].push_back(c.id);
            subsets[p].push_back(subset);
        }

    std::vector<std::size_t> ranks;
    for (const auto& s : simplices)
        ranks.push_back(s.size());

    std::vector<IntMatrix> boundaries;
    for (std::size_t p = 1; p < levels; ++p) {
        IntMatrix boundary(ranks[p - 1], ranks[p]);
        for (std::size_t face = 0; face <= p; ++face) {
            // d_face : Δ_p -> Δ_{p-1} forgets the face-th smallest index.
            IntMatrix face_map(ranks[p - 1], ranks[p]);
            for (std::size_t x = 0; x < ranks[p]; ++x) {
                const int dropped = subsets[p][x][face];
                const std::string& parent = d.component_by_id(simplices[p][x]).parents.at(dropped);
                face_map(position[p - 1].at(parent), x) = 1;
            }
            if (face % 2 == 1)
                for (std::size_t r = 0; r < face_map.rows(); ++r)
                    face_map.negate_row(r);
            boundary = boundary + face_map;
        }
        boundaries.push_back(std::move(boundary));
    }
    return ChainComplex(0, std::move(ranks), std::move(boundaries));
}

SpectralPage cech_page(const SncDivisor& d)
{
    const ChainComplex alt = alt_chain_complex(d);
    const int top = std::max(d.n() - 1, 0);
    SpectralPage page(1, SupportRegion::first_quadrant(top, 0, top));
    for (int p = 0; p <= alt.max_degree(); ++p)
        page.set({p, 0}, FgAbGroup::free(alt.rank(p)));
    for (int p = 0; p < alt.max_degree(); ++p)
        page.set_differential({p, 0}, Hom(FgAbGroup::free(alt.rank(p)), FgAbGroup::free(alt.rank(p + 1)),
                                          alt.boundary(p + 1).transpose()));
    return page;
}

std::vector<FgAbGroup> dual_cohomology(const SncDivisor& d)
{
    const ChainComplex c = build_dual_complex(d).chain_complex();
    std::vector<FgAbGroup> out;
    for (int i = 0; i < std::max(d.n(), 1); ++i)
        out.push_back(cohomology(c, i));
    return out;
}

SimplicialityReport find_bad_intersections(const SncDivisor& d)
{
    validate_snc(d);
    SimplicialityReport report;
    for (const auto& [subset, list] : d.strata())
        if (list.size() >= 2)
            report.bad.push_back(BadIntersection{subset, list.size()});
    report.is_simplicial = report.bad.empty();
    return report;
}

std::size_t bad_component_count(const SncDivisor& d, std::size_t level)
{
    std::size_t count = 0;
    for (const auto& [subset, list] : d.strata())
        if (subset.size() == level && list.size() >= 2)
            count += list.size();
    return count;
}

} // namespace dualk
