#include "dualk/kh_report.hpp"

#include <utility>

#include "dualk/chain_complex.hpp"
#include "dualk/dual_complex.hpp"

namespace dualk {

std::string to_string(FieldMode mode)
{
    return mode == FieldMode::algebraically_closed ? "algebraically_closed" : "general";
}

std::optional<FieldMode> parse_field_mode(const std::string& text)
{
    if (text == "algebraically_closed")
        return FieldMode::algebraically_closed;
    if (text == "general")
        return FieldMode::general;
    return std::nullopt;
}

TorusDescriptor torus_descriptor(const FgAbGroup& hn1, bool hn2_homology_torsion_free, FieldMode mode)
{
    TorusDescriptor t;
    t.field_mode = mode;
    if (mode == FieldMode::general && !hn2_homology_torsion_free) {
        t.determined = false;
        return t;
    }
    t.rank = hn1.free_rank();
    t.mu_part = hn1.torsion_subgroup();
    t.mu_discrepancy = !t.mu_part.is_zero();
    return t;
}

void validate_picard(const PicardInput& pi)
{
    if (pi.n < 3)
        throw LevelMismatch("Picard data needs n >= 3, got n = " + std::to_string(pi.n));
    const std::size_t count = pi.levels.size();
    if (count < 2 || count > 3 || (pi.n == 3 && count != 2))
        throw LevelMismatch("expected levels n-3, n-2" + std::string(pi.n > 3 ? " (and optionally n-4)" : "") +
                            ", got " + std::to_string(count) + " levels");
    for (std::size_t k = 0; k < count; ++k) {
        const int expected = pi.n - 2 - static_cast<int>(count - 1 - k);
        if (pi.levels[k].p != expected)
            throw LevelMismatch("level " + std::to_string(k) + " has p = " + std::to_string(pi.levels[k].p) +
                                ", expected " + std::to_string(expected));
    }
    if (pi.ns_maps.size() + 1 != count)
        throw LevelMismatch("expected " + std::to_string(count - 1) + " NS maps, got " +
                            std::to_string(pi.ns_maps.size()));
    for (std::size_t k = 0; k + 1 < count; ++k) {
        const Hom& f = pi.ns_maps[k];
        if (!(f.source() == pi.levels[k].ns) || !(f.target() == pi.levels[k + 1].ns))
            throw LevelMismatch("NS map " + std::to_string(k) + " is " + f.source().to_string() + " -> " +
                                f.target().to_string() + " but the levels are " + pi.levels[k].ns.to_string() +
                                " -> " + pi.levels[k + 1].ns.to_string());
    }
    if (count == 3 && !compose(pi.ns_maps[1], pi.ns_maps[0]).is_zero())
        throw ComplexViolation("NS maps from level " + std::to_string(pi.n - 4) + " to " +
                               std::to_string(pi.n - 2) + " do not compose to zero");
}

NsAnalysis ns_analysis(const PicardInput& pi)
{
    validate_picard(pi);
    const Hom& main = pi.ns_maps.back();
    const FgAbGroup& middle = main.source();
    const Hom in = pi.ns_maps.size() == 2 ? pi.ns_maps.front() : Hom::zero(FgAbGroup{}, middle);

    const Subquotient kernel = homology_at(Hom::zero(FgAbGroup{}, middle), main);
    const Subquotient gamma = homology_at(in, main);

    const IntMatrix& lifts = kernel.generator_lifts();
    std::vector<std::vector<Integer>> columns;
    for (std::size_t j = 0; j < lifts.cols(); ++j)
        columns.push_back(gamma.canonical_coordinates(lifts.column(j)));
    IntMatrix m = IntMatrix::from_columns(gamma.group().generator_count(), columns);

    NsAnalysis out{kernel.group(), hom_analyze(main).cokernel, gamma.group(),
                   Hom(kernel.group(), gamma.group(), std::move(m))};
    return out;
}

GroupTerm GroupTerm::quotient_of(FgAbGroup g)
{
    if (g.is_zero())
        return exact(std::move(g));
    return {std::move(g), Determination::bounded};
}

Extension make_extension(GroupTerm sub, GroupTerm quotient)
{
    Extension e;
    e.split = (quotient.is_exact() && quotient.group.is_free()) || (sub.is_exact() && sub.group.is_zero());
    if (sub.is_exact() && quotient.is_exact() && e.split)
        e.middle = direct_sum({sub.group, quotient.group});
    e.rank_min = sub.rank_min() + quotient.rank_min();
    e.rank_max = sub.rank_max() + quotient.rank_max();
    e.sub = std::move(sub);
    e.quotient = std::move(quotient);
    return e;
}

OneMotiveDescriptor one_motive_descriptor(const PicardInput& pi, const TorusDescriptor& torus)
{
    NsAnalysis ns = ns_analysis(pi);
    return {ns.ker_ns, ns.gamma, ns.ker_to_gamma, torus, pi.coker_pic0_dim, "opaque"};
}

FgAbGroup kh_top(const SncDivisor& d)
{
    return dual_cohomology(d).back();
}

KhReport kh_report(const SncDivisor& d, const PicardInput& pi, FieldMode mode)
{
    if (pi.n != d.n())
        throw LevelMismatch("Picard data is for n = " + std::to_string(pi.n) + " but the divisor has n = " +
                            std::to_string(d.n()));
    validate_picard(pi);

    const ChainComplex c = build_dual_complex(d).chain_complex();
    const int n = d.n();
    KhReport r;
    r.n = n;
    r.kh_top = cohomology(c, n - 1);
    r.h_n3 = cohomology(c, n - 3);
    r.h_n2 = cohomology(c, n - 2);
    r.ns = ns_analysis(pi);

    const TorusDescriptor torus = torus_descriptor(r.kh_top, homology(c, n - 2).is_free(), mode);

    r.units.torus = torus;
    r.units.coker_pic0_dim = pi.coker_pic0_dim;
    r.units.ker_beta = pi.ker_beta_known ? GroupTerm::exact(*pi.ker_beta_known) : GroupTerm::quotient_of(r.ns.ker_ns);
    r.units.coker_ns = r.ns.coker_ns;
    if (torus.determined && torus.rank == 0 && torus.mu_part.is_zero() && pi.coker_pic0_dim == 0)
        r.units.finitely_generated_value = r.ns.coker_ns;

    r.one_motive = {r.ns.ker_ns, r.ns.gamma, r.ns.ker_to_gamma, torus, pi.coker_pic0_dim, "opaque"};

    // The only unknown differential into the top corner; it vanishes for n = 3.
    r.kh.d2_image = n == 3 ? GroupTerm::exact({}) : GroupTerm::quotient_of(r.h_n3);
    r.kh.d2_unknown = !r.kh.d2_image.is_exact();
    r.kh.torus_rank = torus.rank;
    r.kh.abelian_dim = pi.coker_pic0_dim;
    if (r.units.finitely_generated_value) {
        const FgAbGroup& units = *r.units.finitely_generated_value;
        GroupTerm sub = r.kh.d2_unknown ? GroupTerm::quotient_of(units) : GroupTerm::exact(units);
        r.kh.finitely_generated = make_extension(std::move(sub), GroupTerm::exact(r.h_n2));
        r.kh.value = r.kh.finitely_generated->middle;
    }

    r.ker_alpha = make_extension(r.units.ker_beta, r.kh.d2_image);
    r.coker_alpha = make_extension(GroupTerm::exact(r.ns.coker_ns), GroupTerm::exact(r.h_n2));
    r.n3_exact = n == 3;

    if (n == 3)
        r.notes.push_back("d_2^{0,0} = 0: ker(alpha) = ker(beta) and ker(NS) -> G(k) -> KH_{-2}(X) is exact");
    else if (r.kh.d2_unknown)
        r.notes.push_back("im(d_2^{" + std::to_string(n - 3) + ",0}) is only known to be a quotient of H^" +
                          std::to_string(n - 3) + "(D(E),Z) = " + r.h_n3.to_string());
    else
        r.notes.push_back("H^" + std::to_string(n - 3) + "(D(E),Z) = 0 forces d_2^{" + std::to_string(n - 3) +
                          ",0} = 0");
    if (torus.mu_discrepancy)
        r.notes.push_back("H^" + std::to_string(n - 1) + "(D(E),Z) has torsion " + torus.mu_part.to_string() +
                          ": the tensor reading of T_E(k) drops it, the universal coefficient reading keeps it");
    if (!torus.determined)
        r.notes.push_back("H_" + std::to_string(n - 2) +
                          "(D(E),Z) has torsion and k is not assumed to contain all roots of unity: T_E undetermined");
    if (pi.coker_pic0_dim == 0 && !pi.ker_beta_known && !r.ns.ker_ns.is_zero())
        r.notes.push_back("coker(Pic^0) has dimension 0, so ker(beta) is trivial; the reported bound is ker(NS)");
    return r;
}

} // namespace dualk
