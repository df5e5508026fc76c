#include "dualk/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace dualk {

namespace {

struct Position {
    std::size_t row;
    std::size_t col;
};

// Row-major scan with strict comparison gives the lowest-row, lowest-column
// tie break.
std::optional<Position> find_pivot(const IntMatrix& a, std::size_t start)
{
    std::optional<Position> best;
    Integer best_abs;
    for (std::size_t i = start; i < a.rows(); ++i)
        for (std::size_t j = start; j < a.cols(); ++j) {
            const Integer& v = a(i, j);
            if (v == 0)
                continue;
            Integer mag = abs(v);
            if (!best || mag < best_abs) {
                best = Position{i, j};
                best_abs = std::move(mag);
            }
        }
    return best;
}

class Reducer {
public:
    explicit Reducer(const IntMatrix& a)
        : a_(a),
          u_(IntMatrix::identity(a.rows())),
          u_inv_(IntMatrix::identity(a.rows())),
          v_(IntMatrix::identity(a.cols())),
          v_inv_(IntMatrix::identity(a.cols()))
    {
    }

    SmithForm run()
    {
        const std::size_t diag = std::min(a_.rows(), a_.cols());
        std::size_t rank = 0;
        for (std::size_t t = 0; t < diag; ++t) {
            if (!reduce_at(t))
                break;
            if (a_(t, t) < 0)
                negate_row(t);
            rank = t + 1;
        }
        return SmithForm{std::move(u_), std::move(a_), std::move(v_), std::move(u_inv_),
                         std::move(v_inv_), rank};
    }

private:
    // Returns false when the active submatrix is zero.
    bool reduce_at(std::size_t t)
    {
        for (;;) {
            auto pivot = find_pivot(a_, t);
            if (!pivot)
                return false;
            swap_rows(t, pivot->row);
            swap_cols(t, pivot->col);

            bool residue = false;
            for (std::size_t i = t + 1; i < a_.rows(); ++i) {
                if (a_(i, t) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
                add_row_multiple(i, t, -q);
                residue = residue || a_(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < a_.cols(); ++j) {
                if (a_(t, j) == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
                add_col_multiple(j, t, -q);
                residue = residue || a_(t, j) != 0;
            }
            if (residue)
                continue;

            // Row and column are clear; enforce divisibility of the rest.
            std::optional<std::size_t> offending_row;
            for (std::size_t i = t + 1; i < a_.rows() && !offending_row; ++i)
                for (std::size_t j = t + 1; j < a_.cols(); ++j)
                    if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                        offending_row = i;
                        break;
                    }
            if (!offending_row)
                return true;
            add_row_multiple(t, *offending_row, Integer(1));
        }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        a_.swap_rows(a, b);
        u_.swap_rows(a, b);
        u_inv_.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        a_.swap_cols(a, b);
        v_.swap_cols(a, b);
        v_inv_.swap_rows(a, b);
    }

    // row[target] += f * row[source]; the inverse picks up col[source] -= f * col[target].
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& f)
    {
        a_.add_row_multiple(target, source, f);
        u_.add_row_multiple(target, source, f);
        u_inv_.add_col_multiple(source, target, -f);
    }

    // col[target] += f * col[source]; the inverse picks up row[source] -= f * row[target].
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& f)
    {
        a_.add_col_multiple(target, source, f);
        v_.add_col_multiple(target, source, f);
        v_inv_.add_row_multiple(source, target, -f);
    }

    void negate_row(std::size_t r)
    {
        a_.negate_row(r);
        u_.negate_row(r);
        u_inv_.negate_col(r);
    }

    IntMatrix a_;
    IntMatrix u_;
    IntMatrix u_inv_;
    IntMatrix v_;
    IntMatrix v_inv_;
};

} // namespace

std::vector<Integer> SmithForm::invariant_factors() const
{
    std::vector<Integer> out;
    out.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i)
        out.push_back(D(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMatrix& a)
{
    return Reducer(a).run();
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    SmithForm s = smith_normal_form(a);
    return s.V.columns(s.rank, a.cols() - s.rank);
}

} // namespace dualk
