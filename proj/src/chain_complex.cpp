#include "dualk/chain_complex.hpp"

#include <string>
#include <utility>

#include "dualk/smith.hpp"

namespace dualk {

ChainComplex::ChainComplex(int min_degree, std::vector<std::size_t> ranks,
                           std::vector<IntMatrix> boundaries)
    : min_degree_(min_degree), ranks_(std::move(ranks)), boundaries_(std::move(boundaries))
{
    if (ranks_.empty())
        ranks_.push_back(0);
    if (boundaries_.size() + 1 != ranks_.size())
        throw NonComplexError(min_degree_, "ChainComplex: expected " +
                                               std::to_string(ranks_.size() - 1) +
                                               " boundary matrices, got " +
                                               std::to_string(boundaries_.size()));
    for (std::size_t k = 0; k < boundaries_.size(); ++k) {
        const IntMatrix& b = boundaries_[k];
        if (b.rows() != ranks_[k] || b.cols() != ranks_[k + 1]) {
            const int d = min_degree_ + static_cast<int>(k) + 1;
            throw NonComplexError(d, "ChainComplex: boundary in degree " + std::to_string(d) +
                                         " has shape " + std::to_string(b.rows()) + "x" +
                                         std::to_string(b.cols()) + ", expected " +
                                         std::to_string(ranks_[k]) + "x" +
                                         std::to_string(ranks_[k + 1]));
        }
    }
}

std::size_t ChainComplex::rank(int d) const
{
    if (!in_range(d))
        return 0;
    return ranks_[static_cast<std::size_t>(d - min_degree_)];
}

IntMatrix ChainComplex::boundary(int d) const
{
    if (in_range(d) && in_range(d - 1))
        return boundaries_[static_cast<std::size_t>(d - 1 - min_degree_)];
    return IntMatrix(rank(d - 1), rank(d));
}

void validate_complex(const ChainComplex& c)
{
    for (int d = c.min_degree() + 1; d <= c.max_degree(); ++d) {
        const IntMatrix b = c.boundary(d);
        if (b.rows() != c.rank(d - 1) || b.cols() != c.rank(d))
            throw NonComplexError(d, "boundary shape mismatch in degree " + std::to_string(d));
    }
    for (int d = c.min_degree() + 2; d <= c.max_degree(); ++d)
        if (!(c.boundary(d - 1) * c.boundary(d)).is_zero())
            throw NonComplexError(d, "boundary of boundary is nonzero in degree " +
                                         std::to_string(d));
}

namespace {

// ker(out) / im(in) inside Z^middle for maps of free groups.
FgAbGroup free_middle_homology(const IntMatrix& in, const IntMatrix& out, std::size_t middle)
{
    if (middle == 0)
        return {};
    return Subquotient(integer_kernel(out), in).group();
}

} // namespace

FgAbGroup homology(const ChainComplex& c, int degree)
{
    if (!c.in_range(degree))
        return {};
    return free_middle_homology(c.boundary(degree + 1), c.boundary(degree), c.rank(degree));
}

FgAbGroup cohomology(const ChainComplex& c, int degree)
{
    if (!c.in_range(degree))
        return {};
    return free_middle_homology(c.boundary(degree).transpose(),
                                c.boundary(degree + 1).transpose(), c.rank(degree));
}

long euler_characteristic(const ChainComplex& c)
{
    long chi = 0;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
        const long r = static_cast<long>(c.rank(d));
        chi += (d % 2 == 0) ? r : -r;
    }
    return chi;
}

} // namespace dualk
