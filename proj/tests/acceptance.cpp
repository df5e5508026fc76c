// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "dualk/blowup.hpp"
#include "dualk/cli.hpp"
#include "dualk/dual_complex.hpp"
#include "dualk/k_report.hpp"
#include "dualk/kh_report.hpp"
#include "dualk/smith.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/snc_oracles.hpp"

using namespace dualk;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures for one criterion; the first few are printed.
struct Check {
    std::size_t failures = 0;
    std::vector<std::string> first;

    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (++failures <= 3)
            first.push_back(what);
    }
};

int failed_criteria = 0;

void report(int number, const std::string& title, const Check& c, const std::string& detail)
{
    const bool ok = c.failures == 0;
    if (!ok)
        ++failed_criteria;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << number << "] " << title << " (" << detail << ")\n";
    for (const std::string& f : c.first)
        std::cout << "     " << f << "\n";
}

std::string fmt_seconds(double s)
{
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << " s";
    return o.str();
}

FgAbGroup z(std::size_t r) { return FgAbGroup::free(r); }

std::vector<FgAbGroup> all_cohomology(const ChainComplex& c)
{
    std::vector<FgAbGroup> out;
    for (int i = c.min_degree(); i <= c.max_degree(); ++i)
        out.push_back(cohomology(c, i));
    return out;
}

// Shared corpus for criteria 3 to 5: random divisors plus fixed shapes.
std::vector<SncDivisor> corpus()
{
    std::mt19937 rng(20261015);
    gen::RandomOptions wide;
    wide.components_max = 8;
    gen::RandomOptions sparse = wide;
    sparse.n_max = 3;
    sparse.meet_probability = 0.35;
    sparse.copies_max = 3;
    std::vector<SncDivisor> out;
    for (int t = 0; t < 200; ++t)
        out.push_back(gen::random_divisor(rng, t % 3 == 2 ? sparse : wide));
    out.push_back(gen::simplex_skeleton(3, 3, 2));
    out.push_back(gen::simplex_skeleton(4, 5, 4));
    out.push_back(gen::parallel_pair(3, 3));
    return out;
}

// 1. Smith normal form against Bareiss determinants and gcd-of-minors.
void criterion_snf()
{
    const auto start = Clock::now();
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::size_t> dim(0, 6);
    Check c;
    std::size_t minors_checked = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const std::size_t rows = dim(rng), cols = dim(rng);
        const IntMatrix a = oracle::random_matrix(rng, rows, cols, -9, 9);
        const SmithForm s = smith_normal_form(a);
        const std::string tag = "matrix " + std::to_string(t) + " " + a.to_string();
        c.expect(s.U * a * s.V == s.D, "U A V != D for " + tag);
        const mpz_class du = oracle::determinant(s.U), dv = oracle::determinant(s.V);
        c.expect(abs(du) == 1 && abs(dv) == 1, "U or V not unimodular for " + tag);
        c.expect(s.U * s.U_inverse == IntMatrix::identity(rows) && s.V * s.V_inverse == IntMatrix::identity(cols),
                 "tracked inverses wrong for " + tag);
        bool diagonal = true;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j && s.D(i, j) != 0)
                    diagonal = false;
        c.expect(diagonal, "D not diagonal for " + tag);
        const std::vector<Integer> f = s.invariant_factors();
        bool chain = f.size() == s.rank;
        for (std::size_t i = 0; i < f.size() && chain; ++i) {
            chain = f[i] > 0 && s.D(i, i) == f[i];
            if (chain && i + 1 < f.size())
                chain = f[i + 1] % f[i] == 0;
        }
        for (std::size_t i = s.rank; i < std::min(rows, cols) && chain; ++i)
            chain = s.D(i, i) == 0;
        c.expect(chain, "divisibility chain broken for " + tag);
        if (rows <= 4 && cols <= 4) {
            ++minors_checked;
            const auto expected = oracle::invariant_factors_by_minors(oracle::to_small(a));
            std::vector<std::int64_t> got;
            for (const Integer& x : f)
                got.push_back(x.get_si());
            c.expect(got == expected, "invariant factors differ from minors for " + tag);
        }
    }
    const double secs = seconds_since(start);
    c.expect(secs < 30.0, "took " + fmt_seconds(secs));
    report(1, "Smith normal form", c,
           std::to_string(trials) + " matrices, " + std::to_string(minors_checked) + " against minors, " +
               fmt_seconds(secs) + " < 30 s");
}

// 2. Known integer cohomology.
void criterion_cohomology_suite()
{
    const auto start = Clock::now();
    Check c;
    const auto check = [&](const std::string& name, const std::vector<FgAbGroup>& got,
                           const std::vector<FgAbGroup>& want) { c.expect(got == want, name + " cohomology wrong"); };
    check("boundary of 2-simplex", dual_cohomology(gen::simplex_skeleton(3, 3, 2)), {z(1), z(1), z(0)});
    check("2-simplex", dual_cohomology(gen::simplex_skeleton(3, 3, 3)), {z(1), z(0), z(0)});
    check("boundary of 3-simplex", dual_cohomology(gen::simplex_skeleton(3, 4, 3)), {z(1), z(0), z(1)});
    check("boundary of 4-simplex", dual_cohomology(gen::simplex_skeleton(4, 5, 4)), {z(1), z(0), z(0), z(1)});
    check("parallel-edge circle", dual_cohomology(gen::parallel_pair(2, 2)), {z(1), z(1)});
    const ChainComplex torus(0, {1, 2, 1}, {IntMatrix(1, 2), IntMatrix(2, 1)});
    check("2-torus", all_cohomology(torus), {z(1), z(2), z(1)});
    const double secs = seconds_since(start);
    c.expect(secs < 1.0, "took " + fmt_seconds(secs));
    report(2, "cohomology oracle suite", c, "6 spaces, " + fmt_seconds(secs) + " < 1 s");
}

// 3. E_2 of the Čech page equals cohomology of the dual complex.
void criterion_e2(const std::vector<SncDivisor>& divisors)
{
    const auto start = Clock::now();
    Check c;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        const SncDivisor& d = divisors[k];
        const SpectralPage e1 = cech_page(d);
        const SpectralPage e2 = e2_page(e1, e1.support());
        const ChainComplex cells = build_dual_complex(d).chain_complex();
        for (int i = 0; i < d.n(); ++i)
            c.expect(e2.at({i, 0}) == cohomology(cells, i),
                     "divisor " + std::to_string(k) + " degree " + std::to_string(i));
    }
    const double secs = seconds_since(start);
    c.expect(secs < 60.0, "took " + fmt_seconds(secs));
    report(3, "E_2 of the Cech page equals H^*(D(E))", c,
           std::to_string(divisors.size()) + " divisors, " + fmt_seconds(secs) + " < 60 s");
}

// 4. Simpliciality against the duplicate vertex set check.
void criterion_simpliciality(const std::vector<SncDivisor>& divisors)
{
    Check c;
    std::size_t simplicial = 0, total = 0;
    const auto check = [&](const SncDivisor& d, const std::string& tag) {
        const bool got = find_bad_intersections(d).is_simplicial;
        c.expect(got == oracle::simplicial_by_vertex_sets(d), tag);
        simplicial += got;
        ++total;
    };
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        check(divisors[k], "divisor " + std::to_string(k));
        check(resolve_to_simplicial(divisors[k]).divisor, "resolution of divisor " + std::to_string(k));
    }
    report(4, "simpliciality criterion", c,
           std::to_string(total) + " divisors, " + std::to_string(simplicial) + " simplicial");
}

// Bad component counts from the deepest level down, compared lexicographically.
std::vector<std::size_t> bad_profile(const SncDivisor& d)
{
    std::vector<std::size_t> out;
    for (int level = d.n(); level >= 2; --level)
        out.push_back(bad_component_count(d, static_cast<std::size_t>(level)));
    return out;
}

// 5. Resolution terminates, is simplicial, decreases badness, keeps H^*.
void criterion_resolution(const std::vector<SncDivisor>& divisors)
{
    Check c;
    std::size_t blowups = 0, longest = 0;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        const SncDivisor& d = divisors[k];
        const std::string tag = "divisor " + std::to_string(k);
        Resolution r;
        try {
            r = resolve_to_simplicial(d);
        } catch (const SncError& e) {
            c.expect(false, tag + ": " + e.what());
            continue;
        }
        blowups += r.steps.size();
        longest = std::max(longest, r.steps.size());
        c.expect(oracle::simplicial_by_vertex_sets(r.divisor), tag + " not simplicial");
        SncDivisor cur = d;
        for (const BlowupRecord& step : r.steps) {
            const SncDivisor next = replay(cur, {step});
            c.expect(step.bad_after < step.bad_before, tag + " step over " + step.center + " did not reduce its level");
            c.expect(bad_profile(next) < bad_profile(cur), tag + " step over " + step.center + " did not reduce badness");
            cur = next;
        }
        c.expect(cur == r.divisor, tag + " replay differs");
        c.expect(dual_cohomology(r.divisor) == dual_cohomology(d), tag + " cohomology changed");
    }
    report(5, "resolution to a simplicial dual complex", c,
           std::to_string(divisors.size()) + " divisors, " + std::to_string(blowups) + " blowups, longest " +
               std::to_string(longest));
}

// 6. Point blowup on a double curve: E' meets E1 and E2 only.
void criterion_point_blowup()
{
    Check c;
    for (std::size_t m = 2; m <= 7; ++m) {
        const SncDivisor d = gen::simplex_skeleton(3, m, 3);
        const std::string tag = std::to_string(m) + " components";
        const BlowupResult r = blowup_point_on_double_curve(d, "s_1_2");
        const SncDivisor& e = r.divisor;
        const int prime = static_cast<int>(m);
        c.expect(e.component_count() == m + 1, tag + ": component count");
        for (int i = 0; i < prime; ++i) {
            const std::size_t meets = e.stratum({i, prime}).size();
            c.expect(meets == (i < 2 ? 1u : 0u), tag + ": E" + std::to_string(i + 1) + " meets E' in " +
                                                     std::to_string(meets) + " pieces");
            for (int j = i + 1; j < prime; ++j)
                c.expect(e.stratum({i, j}).size() == d.stratum({i, j}).size(),
                         tag + ": E" + std::to_string(i + 1) + " and E" + std::to_string(j + 1) + " changed");
        }
        c.expect(e.stratum({0, 1, prime}).size() == 1, tag + ": no triple point on the curve");
        c.expect(dual_cohomology(e) == dual_cohomology(d), tag + ": cohomology changed");
        const BlowupResult twice = blowup_point_on_double_curve(e, "s_1_2");
        c.expect(dual_cohomology(twice.divisor) == dual_cohomology(d), tag + ": second blowup changed cohomology");
    }
    report(6, "point blowup on a double curve", c, "configurations with 2 to 7 components");
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 7. The triangle cycle, checked against the hand computation and minors.
void criterion_triangle()
{
    const auto start = Clock::now();
    Check c;
    const fs::path dir = DUALK_FIXTURES;
    const cli::InputDocument doc = cli::parse_input((dir / "triangle_cycle.json").string());
    const cli::Json want = cli::Json::parse(read_file(dir / "triangle_cycle.expected.json"));
    const KhReport r = kh_report(doc.divisor, *doc.picard, doc.field_mode);
    const KReport k = k_report(r, doc.dubois);

    const auto h = dual_cohomology(doc.divisor);
    for (std::size_t i = 0; i < h.size(); ++i)
        c.expect(h[i] == z(want["cohomology_ranks"][i].get<std::size_t>()), "H^" + std::to_string(i));
    c.expect(r.kh_top == z(want["kh_top_rank"]), "KH_{-3}");

    // ker and coker of NS from minors: rank of the map and its invariant factors
    const auto factors = oracle::invariant_factors_by_minors(oracle::to_small(doc.picard->ns_maps[0].matrix()));
    bool unit_factors = true;
    for (std::int64_t f : factors)
        unit_factors = unit_factors && f == 1;
    c.expect(unit_factors, "NS map has torsion cokernel");
    c.expect(3 - factors.size() == want["ker_ns_rank"].get<std::size_t>(), "ker(NS) rank by minors");
    c.expect(3 - factors.size() == want["coker_ns_rank"].get<std::size_t>(), "coker(NS) rank by minors");
    c.expect(r.ns.ker_ns == z(want["ker_ns_rank"]), "ker(NS)");
    c.expect(r.ns.coker_ns == z(want["coker_ns_rank"]), "coker(NS)");
    c.expect(r.ns.gamma == z(want["gamma_rank"]), "Gamma");

    c.expect(r.n3_exact, "n3_exact not set");
    c.expect(r.kh.value && *r.kh.value == z(want["kh_value_rank"]), "KH_{-2} is not Z^2");
    c.expect(r.ker_alpha.sub.group == z(want["ker_alpha_bound_rank"]) && r.ker_alpha.rank_max == 1 &&
                 r.ker_alpha.quotient == GroupTerm::exact(z(0)),
             "ker(alpha) bound is not Z");
    c.expect(r.coker_alpha.sub == GroupTerm::exact(r.ns.coker_ns) && r.coker_alpha.quotient == GroupTerm::exact(h[1]),
             "coker(alpha) ends are not coker(NS) and H^1");
    c.expect(r.coker_alpha.middle && *r.coker_alpha.middle == z(want["coker_alpha_rank"]), "coker(alpha) middle");
    c.expect(k.nk.size() == 1 && k.nk[0].v_dim == want["nk_v_dim"].get<std::size_t>(), "NK dimension");
    c.expect(k.k_shape == want["k_shape"].get<std::string>(), "K shape: " + k.k_shape);
    c.expect(k.n3_corollary, "n = 3 corollary not flagged");
    const double secs = seconds_since(start);
    c.expect(secs < 1.0, "took " + fmt_seconds(secs));
    report(7, "triangle cycle end to end", c, "KH_{-2} = " + (r.kh.value ? r.kh.value->to_string() : "?") +
                                                  ", K: " + k.k_shape + ", " + fmt_seconds(secs) + " < 1 s");
}

PicardInput zero_picard(int n)
{
    PicardInput pi;
    pi.n = n;
    pi.levels = {{n - 3, z(0), 0}, {n - 2, z(0), 0}};
    pi.ns_maps = {Hom(z(0), z(0), IntMatrix(0, 0))};
    return pi;
}

// Random NS(Δ_0) -> NS(Δ_1) for n = 3.
PicardInput random_picard3(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> rank(0, 4);
    const std::size_t a = rank(rng), b = rank(rng);
    PicardInput pi;
    pi.n = 3;
    pi.levels = {{0, z(a), 0}, {1, z(b), 0}};
    pi.ns_maps = {Hom(z(a), z(b), oracle::random_matrix(rng, b, a, -3, 3))};
    pi.coker_pic0_dim = rng() % 2;
    return pi;
}

// Every group term is exact. The divisible torus part of KH is not an
// unknown, it is carried as a rank instead of a value.
bool all_exact(const KhReport& r)
{
    const bool fg_known = r.kh.value || (!r.kh.finitely_generated && r.kh.torus_rank + r.kh.abelian_dim > 0);
    return !r.kh.d2_unknown && r.kh.d2_image.is_exact() && r.units.ker_beta.is_exact() && fg_known &&
           r.ker_alpha.sub.is_exact() && r.ker_alpha.quotient.is_exact() && r.ker_alpha.middle &&
           r.coker_alpha.sub.is_exact() && r.coker_alpha.quotient.is_exact() && r.coker_alpha.middle;
}

// 8. n = 3 never has an unknown d_2; ∂Δ^4 forces every unknown to zero.
void criterion_d2()
{
    Check c;
    std::mt19937 rng(8);
    gen::RandomOptions opt;
    opt.n_min = 3;
    opt.n_max = 3;
    std::size_t reports = 0;
    for (int t = 0; t < 200; ++t) {
        cli::InputDocument doc;
        doc.divisor = gen::random_divisor(rng, opt);
        doc.picard = t % 4 ? random_picard3(rng) : zero_picard(3);
        doc.field_mode = t % 2 ? FieldMode::general : FieldMode::algebraically_closed;
        const cli::CommandResult res = cli::run("kh-report", doc);
        const KhReport r = kh_report(doc.divisor, *doc.picard, doc.field_mode);
        ++reports;
        const std::string tag = "report " + std::to_string(t);
        c.expect(!r.kh.d2_unknown && r.kh.d2_image == GroupTerm::exact(z(0)), tag + ": d_2 not exact zero");
        c.expect(res.json["report"]["kh"]["d2_unknown"] == false, tag + ": JSON carries d2_unknown");
        c.expect(res.text.find("(unknown)") == std::string::npos, tag + ": text carries an unknown marker");
    }
    const KhReport sphere =
        kh_report(gen::simplex_skeleton(4, 5, 4), zero_picard(4), FieldMode::algebraically_closed);
    c.expect(sphere.h_n3.is_zero(), "H^1 of the 3-sphere is not zero");
    c.expect(all_exact(sphere), "boundary of the 4-simplex report still has unknowns");
    c.expect(sphere.kh_top == z(1), "KH_{-4} of the boundary of the 4-simplex");
    report(8, "d_2 markers", c, std::to_string(reports) + " n = 3 reports, boundary of the 4-simplex exact");
}

struct ProcessResult {
    int code = -1;
    std::string output;
};

ProcessResult run_tool(const std::string& input, const std::string& command, const std::string& emit)
{
    const std::string cmd = std::string("'") + DUALK_TOOL + "' --input '" + input + "' --command " + command +
                            " --emit " + emit + " 2>&1";
    ProcessResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        r.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// 9. The shipped binary is deterministic, and resolve output reparses.
void criterion_cli()
{
    Check c;
    const fs::path dir = DUALK_FIXTURES;
    const fs::path scratch = fs::temp_directory_path() / ("dualk_acceptance_" + std::to_string(getpid()));
    fs::create_directories(scratch);
    std::vector<fs::path> fixtures;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json" && entry.path().stem().extension() != ".expected")
            fixtures.push_back(entry.path());
    std::sort(fixtures.begin(), fixtures.end());
    std::size_t runs = 0, round_trips = 0;
    for (const fs::path& f : fixtures) {
        for (const std::string& cmd : cli::commands()) {
            const ProcessResult a = run_tool(f.string(), cmd, "both");
            const ProcessResult b = run_tool(f.string(), cmd, "both");
            runs += 2;
            c.expect(a.code == b.code && a.output == b.output, f.filename().string() + " " + cmd + " not byte-identical");
            c.expect(a.code >= 0 && a.code <= 3, f.filename().string() + " " + cmd + " crashed");
        }
        const ProcessResult resolved = run_tool(f.string(), "resolve", "json");
        if (resolved.code != 0)
            continue;
        const cli::Json j = cli::Json::parse(resolved.output);
        const fs::path out = scratch / f.filename();
        std::ofstream(out) << j["document"].dump(2) << "\n";
        const ProcessResult simp = run_tool(out.string(), "check-simplicial", "text");
        c.expect(simp.code == 0 && simp.output == "simplicial\n", f.filename().string() + " resolved is not simplicial");
        const ProcessResult h0 = run_tool(f.string(), "cohomology", "json");
        const ProcessResult h1 = run_tool(out.string(), "cohomology", "json");
        c.expect(h0.output == h1.output, f.filename().string() + " resolved cohomology differs");
        const ProcessResult again = run_tool(out.string(), "resolve", "json");
        c.expect(cli::Json::parse(again.output)["blowups"].empty() &&
                     cli::Json::parse(again.output)["document"]["divisor"] == j["document"]["divisor"],
                 f.filename().string() + " resolving twice is not idempotent");
        ++round_trips;
    }
    fs::remove_all(scratch);
    report(9, "CLI determinism and resolve round trip", c,
           std::to_string(fixtures.size()) + " fixtures, " + std::to_string(runs) + " runs, " +
               std::to_string(round_trips) + " round trips");
}

} // namespace

int main()
{
    const std::vector<SncDivisor> divisors = corpus();
    criterion_snf();
    criterion_cohomology_suite();
    criterion_e2(divisors);
    criterion_simpliciality(divisors);
    criterion_resolution(divisors);
    criterion_point_blowup();
    criterion_triangle();
    criterion_d2();
    criterion_cli();
    std::cout << (failed_criteria ? "FAILED: " + std::to_string(failed_criteria) + " criteria" : "all criteria pass")
              << "\n";
    return failed_criteria ? 1 : 0;
}
