#include "dualk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dualk/blowup.hpp"
#include "dualk/dual_complex.hpp"

namespace dualk::cli {

namespace {

// --- reading ----------------------------------------------------------------

std::string key_path(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(key_path(path, key), "missing field");
    return *it;
}

const Json* optional_field(const Json& obj, const std::string& key)
{
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path)
{
    if (!obj.is_object())
        throw SchemaError(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            throw SchemaError(key_path(path, it.key()), "unknown field");
}

const Json& array_at(const Json& v, const std::string& path)
{
    if (!v.is_array())
        throw SchemaError(path, "expected an array");
    return v;
}

long long int_at(const Json& v, const std::string& path)
{
    if (!v.is_number_integer())
        throw SchemaError(path, "expected an integer");
    return v.get<long long>();
}

std::size_t count_at(const Json& v, const std::string& path)
{
    const long long x = int_at(v, path);
    if (x < 0)
        throw SchemaError(path, "expected a nonnegative integer");
    return static_cast<std::size_t>(x);
}

std::string string_at(const Json& v, const std::string& path)
{
    if (!v.is_string())
        throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
Integer integer_at(const Json& v, const std::string& path)
{
    if (v.is_number_integer())
        return Integer(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        Integer x;
        if (x.set_str(v.get<std::string>(), 10) == 0)
            return x;
    }
    throw SchemaError(path, "expected an integer");
}

// Where an SncError subject lives in the document.
std::string locate_subject(const SncDivisor& d, const std::vector<IndexSet>& order, const std::string& subject)
{
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string stratum = "divisor.strata[" + std::to_string(i) + "]";
        if (d.subset_label(order[i]) == subject)
            return stratum;
        const auto& list = d.stratum(order[i]);
        for (std::size_t j = 0; j < list.size(); ++j)
            if (list[j].id == subject)
                return stratum + ".components[" + std::to_string(j) + "]";
    }
    for (std::size_t i = 0; i < d.component_count(); ++i)
        if (d.components()[i] == subject)
            return "divisor.components[" + std::to_string(i) + "]";
    return "divisor";
}

SncDivisor parse_divisor(const Json& j)
{
    const std::string path = "divisor";
    only_keys(j, {"n", "components", "strata"}, path);
    const long long n = int_at(field(j, "n", path), "divisor.n");

    std::vector<std::string> labels;
    std::map<std::string, int> index;
    const Json& comps = array_at(field(j, "components", path), "divisor.components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        labels.push_back(string_at(comps[i], index_path("divisor.components", i)));
        index.try_emplace(labels.back(), static_cast<int>(i));
    }

    StrataMap strata;
    std::vector<IndexSet> order;
    const Json* list = optional_field(j, "strata");
    const Json empty = Json::array();
    const Json& strata_json = list ? array_at(*list, "divisor.strata") : empty;
    for (std::size_t s = 0; s < strata_json.size(); ++s) {
        const std::string sp = index_path("divisor.strata", s);
        only_keys(strata_json[s], {"subset", "components"}, sp);
        const Json& subset_json = array_at(field(strata_json[s], "subset", sp), key_path(sp, "subset"));
        IndexSet subset;
        for (std::size_t k = 0; k < subset_json.size(); ++k) {
            const std::string ep = index_path(key_path(sp, "subset"), k);
            const Json& v = subset_json[k];
            if (v.is_string()) {
                auto it = index.find(v.get<std::string>());
                if (it == index.end())
                    throw SncError(SncErrorKind::UnknownId, v.get<std::string>(),
                                   ep + ": no component named '" + v.get<std::string>() + "'");
                subset.push_back(it->second);
            } else {
                const long long i = int_at(v, ep);
                if (i < 0 || i >= static_cast<long long>(labels.size()))
                    throw SncError(SncErrorKind::UnknownId, std::to_string(i),
                                   ep + ": component index " + std::to_string(i) + " does not exist (" +
                                       std::to_string(labels.size()) + " components)");
                subset.push_back(static_cast<int>(i));
            }
        }
        std::sort(subset.begin(), subset.end());
        if (strata.contains(subset))
            throw SchemaError(sp, "subset listed twice");

        std::vector<StratumComponent> members;
        const Json& members_json = array_at(field(strata_json[s], "components", sp), key_path(sp, "components"));
        for (std::size_t c = 0; c < members_json.size(); ++c) {
            const std::string cp = index_path(key_path(sp, "components"), c);
            only_keys(members_json[c], {"id", "parents"}, cp);
            StratumComponent member{string_at(field(members_json[c], "id", cp), key_path(cp, "id")), {}};
            if (const Json* parents = optional_field(members_json[c], "parents")) {
                const std::string pp = key_path(cp, "parents");
                if (!parents->is_object())
                    throw SchemaError(pp, "expected an object keyed by dropped component");
                for (auto it = parents->begin(); it != parents->end(); ++it) {
                    auto found = index.find(it.key());
                    if (found == index.end())
                        throw SncError(SncErrorKind::UnknownId, it.key(),
                                       key_path(pp, it.key()) + ": no component named '" + it.key() + "'");
                    if (!std::binary_search(subset.begin(), subset.end(), found->second))
                        throw SchemaError(key_path(pp, it.key()), "'" + it.key() + "' is not in this subset");
                    member.parents[found->second] = string_at(it.value(), key_path(pp, it.key()));
                }
            }
            members.push_back(std::move(member));
        }
        order.push_back(subset);
        strata.emplace(std::move(subset), std::move(members));
    }

    SncDivisor d(static_cast<int>(n), std::move(labels), std::move(strata));
    try {
        validate_snc(d);
    } catch (const SncError& e) {
        throw SncError(e.kind(), e.subject(), locate_subject(d, order, e.subject()) + ": " + e.detail());
    }
    return d;
}

FgAbGroup parse_group(const Json& j, const std::string& path, const char* rank_key, const char* torsion_key)
{
    const std::size_t rank = count_at(field(j, rank_key, path), key_path(path, rank_key));
    std::vector<Integer> torsion;
    if (const Json* t = optional_field(j, torsion_key)) {
        const std::string tp = key_path(path, torsion_key);
        array_at(*t, tp);
        for (std::size_t k = 0; k < t->size(); ++k) {
            torsion.push_back(integer_at((*t)[k], index_path(tp, k)));
            if (torsion.back() < 2 || (k > 0 && torsion.back() % torsion[k - 1] != 0))
                throw SchemaError(index_path(tp, k),
                                  "torsion must be invariant factors t_i >= 2 with t_i dividing t_{i+1}");
        }
    }
    return FgAbGroup::from_cyclic_orders(rank, torsion);
}

IntMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols)
{
    array_at(j, path);
    if (j.size() != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = index_path(path, r);
        const Json& row = array_at(j[r], rp);
        if (row.size() != cols)
            throw SchemaError(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = integer_at(row[c], index_path(rp, c));
    }
    return m;
}

PicardInput parse_picard(const Json& j, int n)
{
    const std::string path = "picard";
    only_keys(j, {"levels", "ns_maps", "coker_pic0_dim", "ker_beta"}, path);
    PicardInput pi;
    pi.n = n;
    const Json& levels = array_at(field(j, "levels", path), "picard.levels");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::string lp = index_path("picard.levels", k);
        only_keys(levels[k], {"p", "ns_rank", "ns_torsion", "pic0_dim"}, lp);
        PicardLevel level;
        level.p = static_cast<int>(int_at(field(levels[k], "p", lp), key_path(lp, "p")));
        level.ns = parse_group(levels[k], lp, "ns_rank", "ns_torsion");
        if (const Json* dim = optional_field(levels[k], "pic0_dim"))
            level.pic0_dim = count_at(*dim, key_path(lp, "pic0_dim"));
        pi.levels.push_back(std::move(level));
    }
    const Json& maps = array_at(field(j, "ns_maps", path), "picard.ns_maps");
    if (maps.size() + 1 != pi.levels.size())
        throw SchemaError("picard.ns_maps", "expected " + std::to_string(pi.levels.empty() ? 0 : pi.levels.size() - 1) +
                                                " maps between consecutive levels, got " + std::to_string(maps.size()));
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const std::string mp = index_path("picard.ns_maps", k);
        const FgAbGroup& source = pi.levels[k].ns;
        const FgAbGroup& target = pi.levels[k + 1].ns;
        IntMatrix m = parse_matrix(maps[k], mp, target.generator_count(), source.generator_count());
        try {
            pi.ns_maps.emplace_back(source, target, std::move(m));
        } catch (const InvalidHom& e) {
            throw SchemaError(mp, e.what());
        }
    }
    pi.coker_pic0_dim = count_at(field(j, "coker_pic0_dim", path), "picard.coker_pic0_dim");
    if (const Json* kb = optional_field(j, "ker_beta")) {
        only_keys(*kb, {"rank", "torsion"}, "picard.ker_beta");
        pi.ker_beta_known = parse_group(*kb, "picard.ker_beta", "rank", "torsion");
    }
    validate_picard(pi);
    return pi;
}

DuBoisTable parse_dubois_table(const Json& j, const std::string& path)
{
    only_keys(j, {"point", "isolated", "entries"}, path);
    DuBoisTable t;
    if (const Json* p = optional_field(j, "point"))
        t.point = string_at(*p, key_path(path, "point"));
    if (const Json* iso = optional_field(j, "isolated")) {
        if (!iso->is_boolean())
            throw SchemaError(key_path(path, "isolated"), "expected true or false");
        t.isolated = iso->get<bool>();
    }
    const Json& entries = array_at(field(j, "entries", path), key_path(path, "entries"));
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string ep = index_path(key_path(path, "entries"), k);
        only_keys(entries[k], {"p", "q", "b"}, ep);
        const long long p = int_at(field(entries[k], "p", ep), key_path(ep, "p"));
        const long long q = int_at(field(entries[k], "q", ep), key_path(ep, "q"));
        if (p < 0 || q < 1)
            throw SchemaError(ep, "Du Bois entries need p >= 0 and q >= 1");
        const std::size_t b = count_at(field(entries[k], "b", ep), key_path(ep, "b"));
        if (!t.entries.emplace(std::pair{static_cast<int>(p), static_cast<int>(q)}, b).second)
            throw SchemaError(ep, "entry (" + std::to_string(p) + "," + std::to_string(q) + ") listed twice");
    }
    return t;
}

// --- writing ----------------------------------------------------------------

Json integer_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Json group_json(const FgAbGroup& g)
{
    Json torsion = Json::array();
    for (const Integer& t : g.torsion())
        torsion.push_back(integer_json(t));
    return Json{{"text", g.to_string()}, {"rank", g.free_rank()}, {"torsion", torsion}};
}

Json matrix_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(integer_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Json labels_json(const SncDivisor& d, const IndexSet& subset)
{
    Json out = Json::array();
    for (int i : subset)
        out.push_back(d.components()[static_cast<std::size_t>(i)]);
    return out;
}

std::string term_text(const GroupTerm& t)
{
    return t.is_exact() ? t.group.to_string() : "a quotient of " + t.group.to_string();
}

Json term_json(const GroupTerm& t)
{
    return Json{{"group", group_json(t.group)},
                {"determination", to_string(t.determination)},
                {"rank_min", t.rank_min()},
                {"rank_max", t.rank_max()}};
}

std::string extension_text(const Extension& e)
{
    std::string s = "0 → " + term_text(e.sub) + " → · → " + term_text(e.quotient) + " → 0";
    if (e.middle)
        return e.middle->to_string() + " (" + (e.split ? "split, " : "") + s + ")";
    return "extension " + s + ", rank in [" + std::to_string(e.rank_min) + ", " + std::to_string(e.rank_max) + "]";
}

Json extension_json(const Extension& e)
{
    Json j{{"sub", term_json(e.sub)},
           {"quotient", term_json(e.quotient)},
           {"split", e.split},
           {"rank_min", e.rank_min},
           {"rank_max", e.rank_max}};
    j["middle"] = e.middle ? group_json(*e.middle) : Json(nullptr);
    return j;
}

Json torus_json(const TorusDescriptor& t)
{
    return Json{{"determined", t.determined},
                {"rank", t.rank},
                {"mu_part", group_json(t.mu_part)},
                {"field_mode", to_string(t.field_mode)},
                {"mu_discrepancy", t.mu_discrepancy}};
}

std::string torus_text(const TorusDescriptor& t)
{
    if (!t.determined)
        return "undetermined (" + to_string(t.field_mode) + " field)";
    std::string s = "rank " + std::to_string(t.rank);
    if (!t.mu_part.is_zero())
        s += ", finite part " + t.mu_part.to_string() + " (flagged)";
    return s;
}

std::string h(int degree)
{
    return "H^" + std::to_string(degree) + "(D(E),Z)";
}

// --- commands ---------------------------------------------------------------

CommandResult cmd_validate(const InputDocument& doc)
{
    const SncDivisor& d = doc.divisor;
    validate_snc(d);
    std::size_t pieces = 0;
    Json strata = Json::array();
    for (const auto& [subset, list] : d.strata()) {
        pieces += list.size();
        strata.push_back(Json{{"subset", labels_json(d, subset)}, {"count", list.size()}});
    }
    Json j{{"command", "validate"},
           {"valid", true},
           {"n", d.n()},
           {"components", d.components()},
           {"strata", strata},
           {"picard", doc.picard.has_value()},
           {"dubois", !doc.dubois.empty()}};
    std::ostringstream text;
    text << "valid: n = " << d.n() << ", " << d.component_count() << " components, " << pieces
         << " stratum components in " << d.strata().size() << " intersections\n";
    return {text.str(), j};
}

CommandResult cmd_dual_complex(const InputDocument& doc)
{
    const DualComplex dc = build_dual_complex(doc.divisor);
    Json dims = Json::array();
    std::ostringstream text;
    for (std::size_t dim = 0; dim < dc.dimension_count(); ++dim) {
        Json cells = Json::array();
        text << "dim " << dim << ": " << dc.cell_count(dim) << " cells\n";
        for (const DualCell& cell : dc.cells(dim)) {
            Json faces = Json::array();
            std::string boundary;
            for (std::size_t m = 0; m < cell.faces.size(); ++m) {
                const std::string& face = dc.cells(dim - 1)[cell.faces[m]].id;
                const int sign = m % 2 == 0 ? 1 : -1;
                faces.push_back(Json{{"id", face}, {"sign", sign}});
                boundary += std::string(boundary.empty() ? "" : " ") + (sign > 0 ? "+" : "-") + face;
            }
            cells.push_back(Json{{"id", cell.id}, {"subset", labels_json(doc.divisor, cell.subset)}, {"faces", faces}});
            text << "  " << cell.id << " " << doc.divisor.subset_label(cell.subset);
            if (!boundary.empty())
                text << ": ∂ = " << boundary;
            text << "\n";
        }
        dims.push_back(Json{{"dim", dim}, {"cells", cells}});
    }
    const long chi = euler_characteristic(dc.chain_complex());
    text << "euler characteristic: " << chi << "\n";
    return {text.str(), Json{{"command", "dual-complex"}, {"dimensions", dims}, {"euler_characteristic", chi}}};
}

// Cohomology of D(E), checked against the alternating complex and E_2 of
// the Čech page.
std::vector<FgAbGroup> checked_cohomology(const SncDivisor& d)
{
    const ChainComplex cells = build_dual_complex(d).chain_complex();
    if (!(cells == alt_chain_complex(d)))
        throw InvariantError("cellular and alternating chain complexes differ");
    const SpectralPage e1 = cech_page(d);
    const SpectralPage e2 = e2_page(e1, e1.support());
    std::vector<FgAbGroup> out;
    for (int i = 0; i < d.n(); ++i) {
        out.push_back(cohomology(cells, i));
        if (!(e2.at({i, 0}) == out.back()))
            throw InvariantError("E_2^{" + std::to_string(i) + ",0} = " + e2.at({i, 0}).to_string() +
                                 " but H^" + std::to_string(i) + " = " + out.back().to_string());
    }
    return out;
}

CommandResult cmd_cohomology(const InputDocument& doc)
{
    const auto groups = checked_cohomology(doc.divisor);
    Json list = Json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        list.push_back(Json{{"degree", i}, {"group", group_json(groups[i])}});
        text << "H^" << i << " = " << groups[i].to_string() << "\n";
    }
    return {text.str(), Json{{"command", "cohomology"}, {"n", doc.divisor.n()}, {"groups", list}}};
}

std::string bad_text(const SncDivisor& d, const SimplicialityReport& r)
{
    if (r.is_simplicial)
        return "simplicial";
    std::string s = "not simplicial; bad: ";
    for (std::size_t k = 0; k < r.bad.size(); ++k) {
        if (k)
            s += ", ";
        s += d.subset_label(r.bad[k].subset) + " × " + std::to_string(r.bad[k].count);
    }
    return s;
}

CommandResult cmd_check_simplicial(const InputDocument& doc)
{
    const SimplicialityReport r = find_bad_intersections(doc.divisor);
    Json bad = Json::array();
    for (const BadIntersection& b : r.bad)
        bad.push_back(Json{{"subset", labels_json(doc.divisor, b.subset)}, {"count", b.count}});
    return {bad_text(doc.divisor, r) + "\n",
            Json{{"command", "check-simplicial"}, {"simplicial", r.is_simplicial}, {"bad", bad}}};
}

Json record_json(const BlowupRecord& r)
{
    return Json{{"kind", to_string(r.kind)},   {"center", r.center},       {"center_subset", r.center_subset},
                {"new_component", r.new_component}, {"removed", r.removed}, {"added", r.added},
                {"level", r.level},             {"bad_before", r.bad_before}, {"bad_after", r.bad_after}};
}

CommandResult cmd_resolve(const InputDocument& doc, const RunOptions& options)
{
    const Resolution res = resolve_to_simplicial(doc.divisor, options.max_blowups);
    if (!find_bad_intersections(res.divisor).is_simplicial)
        throw InvariantError("resolution finished with bad intersections");
    if (!(replay(doc.divisor, res.steps) == res.divisor))
        throw InvariantError("blowup log does not replay to the resolved divisor");
    if (checked_cohomology(res.divisor) != checked_cohomology(doc.divisor))
        throw InvariantError("resolution changed the cohomology of the dual complex");

    InputDocument resolved;
    resolved.divisor = res.divisor;
    resolved.dubois = doc.dubois;
    resolved.field_mode = doc.field_mode;

    Json log = Json::array();
    std::ostringstream text;
    for (std::size_t k = 0; k < res.steps.size(); ++k) {
        const BlowupRecord& r = res.steps[k];
        log.push_back(record_json(r));
        text << "blowup " << k + 1 << ": " << r.new_component << " over " << r.center << " " << r.center_subset
             << " (level " << r.level << ", bad " << r.bad_before << " → " << r.bad_after << ")\n";
    }
    text << res.steps.size() << (res.steps.size() == 1 ? " blowup; " : " blowups; ") << bad_text(res.divisor, find_bad_intersections(res.divisor)) << "\n";
    if (doc.picard)
        text << "picard block dropped: NS data belongs to the original resolution\n";
    return {text.str(), Json{{"command", "resolve"},
                             {"blowups", log},
                             {"simplicial", true},
                             {"picard_dropped", doc.picard.has_value()},
                             {"document", document_to_json(resolved)}}};
}

KhReport require_kh(const InputDocument& doc, const std::string& command)
{
    if (!doc.picard)
        throw MissingBlockError(command + " needs a 'picard' block");
    return kh_report(doc.divisor, *doc.picard, doc.field_mode);
}

Json kh_json(const KhReport& r)
{
    Json one_motive{{"lattice_Lprime", group_json(r.one_motive.lattice_Lprime)},
                    {"lattice_L", group_json(r.one_motive.lattice_L)},
                    {"surjection", matrix_json(r.one_motive.surjection.matrix())},
                    {"torus", torus_json(r.one_motive.torus)},
                    {"abelian_dim", r.one_motive.abelian_dim},
                    {"map_status", r.one_motive.map_status}};
    Json units{{"torus", torus_json(r.units.torus)},
               {"coker_pic0_dim", r.units.coker_pic0_dim},
               {"ker_beta", term_json(r.units.ker_beta)},
               {"ker_ns_surjects_onto_ker_beta", true},
               {"coker_ns", group_json(r.units.coker_ns)}};
    units["finitely_generated_value"] =
        r.units.finitely_generated_value ? group_json(*r.units.finitely_generated_value) : Json(nullptr);
    Json kh{{"degree", 1 - r.n},
            {"d2_image", term_json(r.kh.d2_image)},
            {"d2_unknown", r.kh.d2_unknown},
            {"torus_rank", r.kh.torus_rank},
            {"abelian_dim", r.kh.abelian_dim}};
    kh["finitely_generated"] = r.kh.finitely_generated ? extension_json(*r.kh.finitely_generated) : Json(nullptr);
    kh["value"] = r.kh.value ? group_json(*r.kh.value) : Json(nullptr);
    return Json{{"n", r.n},
                {"kh_top", Json{{"degree", -r.n}, {"group", group_json(r.kh_top)}}},
                {"h_n3", group_json(r.h_n3)},
                {"h_n2", group_json(r.h_n2)},
                {"ns", Json{{"ker_ns", group_json(r.ns.ker_ns)},
                            {"coker_ns", group_json(r.ns.coker_ns)},
                            {"gamma", group_json(r.ns.gamma)}}},
                {"units_cohomology", units},
                {"one_motive", one_motive},
                {"kh", kh},
                {"ker_alpha", extension_json(r.ker_alpha)},
                {"coker_alpha", extension_json(r.coker_alpha)},
                {"n3_exact", r.n3_exact},
                {"notes", r.notes}};
}

std::string kh_text(const KhReport& r)
{
    std::ostringstream t;
    const int n = r.n;
    t << "n = " << n << "\n";
    t << "KH_{" << -n << "}(X) = " << h(n - 1) << " = " << r.kh_top.to_string() << "\n";
    t << h(n - 3) << " = " << r.h_n3.to_string() << "\n";
    t << h(n - 2) << " = " << r.h_n2.to_string() << "\n";
    t << "ker(NS) = " << r.ns.ker_ns.to_string() << ", coker(NS) = " << r.ns.coker_ns.to_string()
      << ", Gamma = " << r.ns.gamma.to_string() << "\n";
    t << "torus T_E: " << torus_text(r.units.torus) << "\n";
    t << "abelian part: dimension " << r.units.coker_pic0_dim << "\n";
    t << "ker(beta): " << term_text(r.units.ker_beta) << "\n";
    t << "1-motive: [" << r.one_motive.lattice_L.to_string() << " → G], L' = "
      << r.one_motive.lattice_Lprime.to_string() << ", map " << r.one_motive.map_status << "\n";
    t << "im(d_2): " << term_text(r.kh.d2_image) << (r.kh.d2_unknown ? " (unknown)" : "") << "\n";
    t << "KH_{" << 1 - n << "}(X): ";
    if (r.kh.finitely_generated)
        t << extension_text(*r.kh.finitely_generated) << "\n";
    else
        t << "divisible part (torus rank " << r.kh.torus_rank << ", abelian dim " << r.kh.abelian_dim
          << ") up to finitely generated groups\n";
    t << "ker(alpha): " << extension_text(r.ker_alpha) << "\n";
    t << "coker(alpha): " << extension_text(r.coker_alpha) << "\n";
    t << "n3_exact: " << (r.n3_exact ? "yes" : "no") << "\n";
    for (const std::string& note : r.notes)
        t << "note: " << note << "\n";
    return t.str();
}

CommandResult cmd_kh_report(const InputDocument& doc)
{
    const KhReport r = require_kh(doc, "kh-report");
    Json j{{"command", "kh-report"}};
    j["report"] = kh_json(r);
    return {kh_text(r), j};
}

CommandResult cmd_k_report(const InputDocument& doc)
{
    if (doc.dubois.empty())
        throw MissingBlockError("k-report needs a 'dubois' block");
    const KhReport kh = require_kh(doc, "k-report");
    const KReport r = k_report(kh, doc.dubois);
    Json nk = Json::array();
    for (std::size_t k = 0; k < r.nk.size(); ++k)
        nk.push_back(Json{{"point", doc.dubois[k].point}, {"v_dim", r.nk[k].v_dim}, {"shape", r.nk[k].shape}});
    Json j{{"command", "k-report"},
           {"kh", kh_json(kh)},
           {"v_dim", r.v_dim},
           {"nk", nk},
           {"nk_shape", r.nk_shape},
           {"k_shape", r.k_shape},
           {"k_equals_kh", r.k_equals_kh},
           {"surjectivity_note", r.surjectivity_note},
           {"n3_corollary", r.n3_corollary}};
    std::ostringstream t;
    t << kh_text(kh);
    t << "NK_{" << 1 - kh.n << "}: " << r.nk_shape << "\n";
    t << r.k_shape << "\n";
    if (r.surjectivity_note)
        t << "K_{" << 2 - kh.n << "}(X) → KH_{" << 2 - kh.n << "}(X) is surjective\n";
    return {t.str(), j};
}

} // namespace

SchemaError::SchemaError(std::string path, const std::string& detail)
    : ValidationError("SchemaError: " + (path.empty() ? std::string() : path + ": ") + detail), path_(std::move(path))
{
}

InputDocument parse_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("not valid JSON: ") + e.what());
    }
    only_keys(j, {"version", "divisor", "picard", "dubois", "field_mode"}, "");
    InputDocument doc;
    const Json& version = field(j, "version", "");
    if (!version.is_number_integer() || version.get<long long>() != kFormatVersion)
        throw VersionError("VersionError: unsupported version " + version.dump() + " (supported: " +
                           std::to_string(kFormatVersion) + ")");
    doc.divisor = parse_divisor(field(j, "divisor", ""));
    if (const Json* mode = optional_field(j, "field_mode")) {
        const auto parsed = parse_field_mode(string_at(*mode, "field_mode"));
        if (!parsed)
            throw SchemaError("field_mode", "expected \"algebraically_closed\" or \"general\"");
        doc.field_mode = *parsed;
    }
    if (const Json* p = optional_field(j, "picard"))
        doc.picard = parse_picard(*p, doc.divisor.n());
    if (const Json* b = optional_field(j, "dubois")) {
        if (b->is_array())
            for (std::size_t k = 0; k < b->size(); ++k)
                doc.dubois.push_back(parse_dubois_table((*b)[k], index_path("dubois", k)));
        else
            doc.dubois.push_back(parse_dubois_table(*b, "dubois"));
    }
    return doc;
}

InputDocument parse_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

Json divisor_to_json(const SncDivisor& d)
{
    Json strata = Json::array();
    for (const auto& [subset, list] : d.strata()) {
        Json members = Json::array();
        for (const StratumComponent& c : list) {
            Json parents = Json::object();
            for (const auto& [dropped, parent] : c.parents)
                parents[d.components()[static_cast<std::size_t>(dropped)]] = parent;
            members.push_back(Json{{"id", c.id}, {"parents", parents}});
        }
        strata.push_back(Json{{"subset", subset}, {"components", members}});
    }
    return Json{{"n", d.n()}, {"components", d.components()}, {"strata", strata}};
}

Json document_to_json(const InputDocument& doc)
{
    Json j{{"version", doc.version}, {"divisor", divisor_to_json(doc.divisor)}};
    if (doc.picard) {
        const PicardInput& pi = *doc.picard;
        Json levels = Json::array();
        for (const PicardLevel& l : pi.levels) {
            Json torsion = Json::array();
            for (const Integer& t : l.ns.torsion())
                torsion.push_back(integer_json(t));
            levels.push_back(
                Json{{"p", l.p}, {"ns_rank", l.ns.free_rank()}, {"ns_torsion", torsion}, {"pic0_dim", l.pic0_dim}});
        }
        Json maps = Json::array();
        for (const Hom& f : pi.ns_maps)
            maps.push_back(matrix_json(f.matrix()));
        Json p{{"levels", levels}, {"ns_maps", maps}, {"coker_pic0_dim", pi.coker_pic0_dim}};
        if (pi.ker_beta_known) {
            Json torsion = Json::array();
            for (const Integer& t : pi.ker_beta_known->torsion())
                torsion.push_back(integer_json(t));
            p["ker_beta"] = Json{{"rank", pi.ker_beta_known->free_rank()}, {"torsion", torsion}};
        }
        j["picard"] = p;
    }
    if (!doc.dubois.empty()) {
        Json tables = Json::array();
        for (const DuBoisTable& t : doc.dubois) {
            Json entries = Json::array();
            for (const auto& [pq, b] : t.entries)
                entries.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"b", b}});
            tables.push_back(Json{{"point", t.point}, {"isolated", t.isolated}, {"entries", entries}});
        }
        j["dubois"] = tables;
    }
    j["field_mode"] = to_string(doc.field_mode);
    return j;
}

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names{"validate", "dual-complex", "cohomology", "check-simplicial",
                                                "resolve",  "kh-report",    "k-report"};
    return names;
}

CommandResult run(const std::string& command, const InputDocument& doc, const RunOptions& options)
{
    if (command == "validate")
        return cmd_validate(doc);
    if (command == "dual-complex")
        return cmd_dual_complex(doc);
    if (command == "cohomology")
        return cmd_cohomology(doc);
    if (command == "check-simplicial")
        return cmd_check_simplicial(doc);
    if (command == "resolve")
        return cmd_resolve(doc, options);
    if (command == "kh-report")
        return cmd_kh_report(doc);
    if (command == "k-report")
        return cmd_k_report(doc);
    throw ValidationError("unknown command '" + command + "'");
}

std::optional<Emit> parse_emit(const std::string& text)
{
    if (text == "text")
        return Emit::text;
    if (text == "json")
        return Emit::json;
    if (text == "both")
        return Emit::both;
    return std::nullopt;
}

std::string render(const CommandResult& result, Emit emit)
{
    switch (emit) {
    case Emit::text: return result.text;
    case Emit::json: return result.json.dump(2) + "\n";
    case Emit::both: return result.text + result.json.dump(2) + "\n";
    }
    return result.text;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const MissingBlockError*>(&e))
        return 2;
    if (dynamic_cast<const InvariantError*>(&e))
        return 3;
    if (dynamic_cast<const ValidationError*>(&e))
        return 1;
    return 3;
}

} // namespace dualk::cli
