#include "dualk/abgroup.hpp"

#include <algorithm>
#include <utility>

#include "dualk/smith.hpp"

namespace dualk {

// --- FgAbGroup -------------------------------------------------------------

FgAbGroup FgAbGroup::free(std::size_t rank)
{
    FgAbGroup g;
    g.free_rank_ = rank;
    return g;
}

FgAbGroup FgAbGroup::cyclic(const Integer& order)
{
    return from_cyclic_orders(0, {order});
}

FgAbGroup FgAbGroup::from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders)
{
    FgAbGroup g;
    g.free_rank_ = free_rank;
    std::vector<Integer> finite;
    for (const Integer& o : orders) {
        Integer a = abs(o);
        if (a == 0)
            ++g.free_rank_;
        else if (a != 1)
            finite.push_back(std::move(a));
    }
    if (finite.empty())
        return g;
    SmithForm s = smith_normal_form(IntMatrix::diagonal(finite));
    for (const Integer& f : s.invariant_factors())
        if (f != 1)
            g.torsion_.push_back(f);
    return g;
}

Integer FgAbGroup::generator_order(std::size_t k) const
{
    if (k < free_rank_)
        return 0;
    return torsion_.at(k - free_rank_);
}

Integer FgAbGroup::torsion_order() const
{
    Integer n = 1;
    for (const Integer& t : torsion_)
        n *= t;
    return n;
}

FgAbGroup FgAbGroup::torsion_subgroup() const
{
    FgAbGroup g;
    g.torsion_ = torsion_;
    return g;
}

IntMatrix FgAbGroup::relations() const
{
    IntMatrix r(generator_count(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i)
        r(free_rank_ + i, i) = torsion_[i];
    return r;
}

std::string FgAbGroup::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    if (free_rank_ == 1)
        out = "Z";
    else if (free_rank_ > 1)
        out = "Z^" + std::to_string(free_rank_);
    for (const Integer& t : torsion_) {
        if (!out.empty())
            out += " ⊕ ";
        out += "Z/" + t.get_str();
    }
    return out;
}

FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators)
{
    if (relations.rows() != generators)
        throw DimensionMismatch("group_from_presentation: relation matrix has " +
                                std::to_string(relations.rows()) + " rows for " +
                                std::to_string(generators) + " generators");
    SmithForm s = smith_normal_form(relations);
    std::vector<Integer> orders = s.invariant_factors();
    return FgAbGroup::from_cyclic_orders(generators - s.rank, orders);
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups)
{
    std::size_t rank = 0;
    std::vector<Integer> orders;
    for (const FgAbGroup& g : groups) {
        rank += g.free_rank();
        orders.insert(orders.end(), g.torsion().begin(), g.torsion().end());
    }
    return FgAbGroup::from_cyclic_orders(rank, orders);
}

std::vector<Integer> reduce_in(const FgAbGroup& g, std::vector<Integer> x)
{
    if (x.size() != g.generator_count())
        throw DimensionMismatch("reduce_in: coordinate count mismatch");
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        Integer& v = x[g.free_rank() + i];
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), g.torsion()[i].get_mpz_t());
    }
    return x;
}

// --- Hom --------------------------------------------------------------------

namespace {

bool is_zero_in(const FgAbGroup& g, const std::vector<Integer>& x)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        Integer order = g.generator_order(i);
        if (order == 0 ? x[i] != 0 : !mpz_divisible_p(x[i].get_mpz_t(), order.get_mpz_t()))
            return false;
    }
    return true;
}

} // namespace

Hom::Hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
        throw InvalidHom("Hom " + source_.to_string() + " -> " + target_.to_string() +
                         ": matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " +
                         std::to_string(target_.generator_count()) + "x" +
                         std::to_string(source_.generator_count()));
    for (std::size_t j = source_.free_rank(); j < source_.generator_count(); ++j) {
        const Integer order = source_.generator_order(j);
        std::vector<Integer> image = matrix_.column(j);
        for (Integer& v : image)
            v *= order;
        if (!is_zero_in(target_, image))
            throw InvalidHom("Hom " + source_.to_string() + " -> " + target_.to_string() +
                             ": generator " + std::to_string(j) + " of order " +
                             order.get_str() + " does not map into the " + order.get_str() +
                             "-torsion of the target");
    }
}

Hom Hom::zero(FgAbGroup source, FgAbGroup target)
{
    IntMatrix m(target.generator_count(), source.generator_count());
    return Hom(std::move(source), std::move(target), std::move(m));
}

bool Hom::is_zero() const
{
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!is_zero_in(target_, matrix_.column(j)))
            return false;
    return true;
}

Hom compose(const Hom& after, const Hom& before)
{
    if (!(before.target() == after.source()))
        throw DimensionMismatch("compose: " + before.target().to_string() + " is not " +
                                after.source().to_string());
    return Hom(before.source(), after.target(), after.matrix() * before.matrix());
}

// --- Subquotient ------------------------------------------------------------

Subquotient::Subquotient(const IntMatrix& numerator_span, const IntMatrix& denominator_span)
    : ambient_(numerator_span.rows())
{
    if (denominator_span.rows() != ambient_)
        throw DimensionMismatch("Subquotient: ambient dimensions differ");

    SmithForm num = smith_normal_form(numerator_span);
    num_u_ = num.U;
    num_factors_ = num.invariant_factors();
    const std::size_t r = num.rank;

    IntMatrix basis(ambient_, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t row = 0; row < ambient_; ++row)
            basis(row, i) = num.U_inverse(row, i) * num_factors_[i];

    IntMatrix den_coords(r, denominator_span.cols());
    for (std::size_t c = 0; c < denominator_span.cols(); ++c) {
        bool ok = true;
        std::vector<Integer> coords = lattice_coordinates(denominator_span.column(c), ok);
        if (!ok)
            throw ValidationError("Subquotient: denominator lattice is not contained in numerator");
        for (std::size_t i = 0; i < r; ++i)
            den_coords(i, c) = coords[i];
    }

    SmithForm quot = smith_normal_form(den_coords);
    quot_u_ = quot.U;
    const std::vector<Integer> factors = quot.invariant_factors();

    std::size_t free_rank = r - quot.rank;
    std::vector<Integer> torsion;
    for (std::size_t i = quot.rank; i < r; ++i) {
        canonical_index_.push_back(i);
        canonical_order_.push_back(0);
    }
    for (std::size_t i = 0; i < quot.rank; ++i)
        if (factors[i] != 1) {
            canonical_index_.push_back(i);
            canonical_order_.push_back(factors[i]);
            torsion.push_back(factors[i]);
        }
    group_ = FgAbGroup::from_cyclic_orders(free_rank, torsion);

    lifts_ = IntMatrix(ambient_, canonical_index_.size());
    const IntMatrix lift_coords = basis * quot.U_inverse;
    for (std::size_t k = 0; k < canonical_index_.size(); ++k)
        for (std::size_t row = 0; row < ambient_; ++row)
            lifts_(row, k) = lift_coords(row, canonical_index_[k]);
}

std::vector<Integer> Subquotient::lattice_coordinates(const std::vector<Integer>& x, bool& ok) const
{
    ok = true;
    std::vector<Integer> y = num_u_.apply(x);
    const std::size_t r = num_factors_.size();
    for (std::size_t i = r; i < y.size(); ++i)
        if (y[i] != 0) {
            ok = false;
            return {};
        }
    std::vector<Integer> c(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), num_factors_[i].get_mpz_t())) {
            ok = false;
            return {};
        }
        mpz_divexact(c[i].get_mpz_t(), y[i].get_mpz_t(), num_factors_[i].get_mpz_t());
    }
    return c;
}

bool Subquotient::contains(const std::vector<Integer>& x) const
{
    bool ok = true;
    lattice_coordinates(x, ok);
    return ok;
}

std::vector<Integer> Subquotient::canonical_coordinates(const std::vector<Integer>& x) const
{
    bool ok = true;
    std::vector<Integer> c = lattice_coordinates(x, ok);
    if (!ok)
        throw ValidationError("Subquotient: vector is not in the numerator lattice");
    std::vector<Integer> z = quot_u_.apply(c);
    std::vector<Integer> out;
    out.reserve(canonical_index_.size());
    for (std::size_t k = 0; k < canonical_index_.size(); ++k) {
        Integer v = z[canonical_index_[k]];
        if (canonical_order_[k] != 0)
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), canonical_order_[k].get_mpz_t());
        out.push_back(std::move(v));
    }
    return out;
}

// --- analysis ---------------------------------------------------------------

IntMatrix kernel_lift(const Hom& h)
{
    const IntMatrix combined = h.matrix().hstack(h.target().relations());
    const IntMatrix k = integer_kernel(combined);
    const std::size_t gs = h.source().generator_count();
    IntMatrix top(gs, k.cols());
    for (std::size_t r = 0; r < gs; ++r)
        for (std::size_t c = 0; c < k.cols(); ++c)
            top(r, c) = k(r, c);
    return top.hstack(h.source().relations());
}

HomAnalysis hom_analyze(const Hom& h)
{
    const IntMatrix target_rel = h.target().relations();
    const IntMatrix image_span = h.matrix().hstack(target_rel);
    HomAnalysis out;
    out.kernel = Subquotient(kernel_lift(h), h.source().relations()).group();
    out.image = Subquotient(image_span, target_rel).group();
    out.cokernel = group_from_presentation(image_span, h.target().generator_count());
    return out;
}

Subquotient homology_at(const Hom& in, const Hom& out)
{
    if (!(in.target() == out.source()))
        throw DimensionMismatch("homology_at: " + in.target().to_string() + " is not " +
                                out.source().to_string());
    if (!compose(out, in).is_zero())
        throw ValidationError("homology_at: consecutive maps do not compose to zero");
    const IntMatrix rel = out.source().relations();
    return Subquotient(kernel_lift(out), in.matrix().hstack(rel));
}

} // namespace dualk
