#include "dualk/k_report.hpp"

namespace dualk {

namespace {

std::string vector_space(std::size_t dim)
{
    if (dim == 0)
        return "0";
    return dim == 1 ? "k" : "k^" + std::to_string(dim);
}

std::string nk_shape_for(std::size_t dim)
{
    if (dim == 0)
        return "0";
    return std::to_string(dim) + "-dim V ⊗ tQ[t]";
}

} // namespace

std::optional<std::size_t> DuBoisTable::at(int p, int q) const
{
    auto it = entries.find({p, q});
    if (it == entries.end())
        return std::nullopt;
    return it->second;
}

MissingEntry::MissingEntry(int p, int q, const std::string& point)
    : ValidationError("Du Bois table for " + point + " has no entry b^{" + std::to_string(p) + "," +
                      std::to_string(q) + "}"),
      p_(p), q_(q)
{
}

NkDescriptor nk_descriptor(const DuBoisTable& b, int n)
{
    if (!b.isolated)
        throw NonIsolatedSingularity("singular point " + b.point +
                                     " is not isolated; the NK layer is only described for isolated points");
    const auto v = b.at(0, n - 1);
    if (!v)
        throw MissingEntry(0, n - 1, b.point);
    return {*v, nk_shape_for(*v)};
}

KReport k_report(const KhReport& kh, const std::vector<DuBoisTable>& tables)
{
    if (tables.empty())
        throw MissingEntry(0, kh.n - 1, "<none>");
    KReport r;
    r.kh = kh;
    for (const DuBoisTable& t : tables) {
        r.nk.push_back(nk_descriptor(t, kh.n));
        r.v_dim += r.nk.back().v_dim;
    }
    r.nk_shape = nk_shape_for(r.v_dim);
    r.k_equals_kh = r.v_dim == 0;
    r.n3_corollary = kh.n == 3 && tables.size() == 1;

    const std::string degree = std::to_string(1 - kh.n);
    const std::string kh_text = kh.kh.value ? kh.kh.value->to_string() : "KH_{" + degree + "}(X)";
    if (r.k_equals_kh)
        r.k_shape = "K_{" + degree + "}(X) ≅ " + kh_text;
    else if (kh.kh.value && kh.kh.value->is_zero())
        r.k_shape = "K_{" + degree + "}(X) ≅ " + vector_space(r.v_dim);
    else
        r.k_shape = "0 → " + vector_space(r.v_dim) + " → K_{" + degree + "}(X) → " + kh_text + " → 0";
    return r;
}

KReport k_report(const KhReport& kh, const DuBoisTable& table)
{
    return k_report(kh, std::vector<DuBoisTable>{table});
}

} // namespace dualk
