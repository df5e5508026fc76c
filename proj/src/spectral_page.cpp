#include "dualk/spectral_page.hpp"

#include <algorithm>
#include <utility>

namespace dualk {

namespace {

std::string show(Bidegree b)
{
    return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

} // namespace

bool SupportRegion::contains(Bidegree b) const
{
    if (b.p < p_min || b.p > p_max || b.q < q_min || b.q > q_max)
        return false;
    return !total_max || b.p + b.q <= *total_max;
}

SupportRegion SupportRegion::first_quadrant(int p_max, int q_max, std::optional<int> total)
{
    return SupportRegion{0, p_max, 0, q_max, total};
}

SpectralPage::SpectralPage(int page_no, SupportRegion support)
    : page_no_(page_no), support_(support)
{
}

FgAbGroup SpectralPage::at(Bidegree b) const
{
    auto it = entries_.find(b);
    return it == entries_.end() ? FgAbGroup{} : it->second;
}

void SpectralPage::set(Bidegree b, FgAbGroup group)
{
    if (group.is_zero())
        entries_.erase(b);
    else
        entries_[b] = std::move(group);
}

void SpectralPage::set_differential(Bidegree from, Hom d)
{
    if (!(d.source() == at(from)) || !(d.target() == at(target_of(from))))
        throw MalformedPage("differential at " + show(from) + " is " + d.source().to_string() +
                            " -> " + d.target().to_string() + " but the page holds " +
                            at(from).to_string() + " -> " + at(target_of(from)).to_string());
    differentials_.insert_or_assign(from, std::move(d));
}

std::optional<Hom> SpectralPage::differential(Bidegree from) const
{
    auto it = differentials_.find(from);
    if (it == differentials_.end())
        return std::nullopt;
    return it->second;
}

Hom SpectralPage::differential_or_zero(Bidegree from) const
{
    if (auto d = differential(from))
        return *d;
    return Hom::zero(at(from), at(target_of(from)));
}

void SpectralPage::validate() const
{
    for (const auto& [b, g] : entries_)
        if (!g.is_zero() && !support_.contains(b))
            throw SupportViolation("nonzero group " + g.to_string() + " at " + show(b) +
                                   " outside the declared support");
    for (const auto& [b, d] : differentials_) {
        auto next = differential(target_of(b));
        if (next && !compose(*next, d).is_zero())
            throw MalformedPage("differentials at " + show(b) + " and " + show(target_of(b)) +
                                " do not compose to zero");
    }
}

SpectralPage e2_page(const SpectralPage& e1, const SupportRegion& support)
{
    if (e1.page_no() != 1)
        throw MalformedPage("e2_page expects an E_1 page, got page " +
                            std::to_string(e1.page_no()));
    for (const auto& [b, g] : e1.entries())
        if (!support.contains(b))
            throw SupportViolation("E_1 has " + g.to_string() + " at " + show(b) +
                                   " outside the declared support");
    e1.validate();

    SpectralPage e2(2, support);
    for (int p = support.p_min; p <= support.p_max; ++p)
        for (int q = support.q_min; q <= support.q_max; ++q) {
            const Bidegree here{p, q};
            if (!support.contains(here) || e1.at(here).is_zero())
                continue;
            const Bidegree before{p - 1, q};
            const Hom in = e1.differential(before).value_or(Hom::zero(e1.at(before), e1.at(here)));
            const Hom out = e1.differential(here).value_or(
                Hom::zero(e1.at(here), e1.at(e1.target_of(here))));
            e2.set(here, homology_at(in, out).group());
        }
    return e2;
}

std::string to_string(Determination d)
{
    return d == Determination::exact ? "exact" : "bounded";
}

TopCorner e3_top_corner(const SpectralPage& e2, int n, bool d2_known_zero)
{
    if (e2.page_no() != 2)
        throw MalformedPage("e3_top_corner expects an E_2 page, got page " +
                            std::to_string(e2.page_no()));
    for (const auto& [b, g] : e2.entries())
        if (b.q != 0 && b.q != 1)
            throw MalformedPage("e3_top_corner expects rows q in {0,1}; found " + g.to_string() +
                                " at " + show(b));

    const FgAbGroup top = e2.at({n - 1, 0});
    const FgAbGroup source = e2.at({n - 3, 1});

    TopCorner out;
    out.group = top;
    out.rank_max = top.free_rank();
    if (d2_known_zero || source.is_zero() || top.is_zero()) {
        out.determination = Determination::exact;
        out.rank_min = top.free_rank();
        return out;
    }
    out.determination = Determination::bounded;
    out.killed_by_quotient_of = source;
    out.rank_min = top.free_rank() - std::min(top.free_rank(), source.free_rank());
    return out;
}

} // namespace dualk
