#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualk/error.hpp"

namespace dualk {

/// Strictly increasing list of component indices.
using IndexSet = std::vector<int>;

enum class SncErrorKind {
    DimensionBound,
    ClosureViolation,
    ContainmentMismatch,
    DuplicateId,
    UnknownId,
    MalformedSubset,
    UnknownCenter,
    WrongDimension,
    UnknownCurve,
    NonTermination,
};

std::string to_string(SncErrorKind kind);

class SncError : public ValidationError {
public:
    SncError(SncErrorKind kind, std::string subject, const std::string& detail);

    SncErrorKind kind() const { return kind_; }
    /// The offending subset label or id.
    const std::string& subject() const { return subject_; }
    /// The message without the kind prefix.
    const std::string& detail() const { return detail_; }

private:
    SncErrorKind kind_;
    std::string subject_;
    std::string detail_;
};

/// One connected component E_I^{(j)} of an intersection E_I, |I| >= 2.
struct StratumComponent {
    std::string id;
    /// Dropped component index i -> id of the component of E_{I \ {i}} that
    /// contains this one. For |I| = 2 the parents are component labels.
    std::map<int, std::string> parents;

    friend bool operator==(const StratumComponent&, const StratumComponent&) = default;
};

using StrataMap = std::map<IndexSet, std::vector<StratumComponent>>;

/// Combinatorial model of a simple normal crossing divisor E in an
/// n-dimensional X: its irreducible components, the connected components of
/// every multiple intersection, and how those components contain each other.
///
/// Construction only normalizes (drops empty strata, fills the implied
/// parents of double intersections); call validate_snc for the axioms.
class SncDivisor {
public:
    struct Location {
        IndexSet subset;
        std::size_t position = 0; // index into strata().at(subset); unused for components
        bool is_component() const { return subset.size() == 1; }
    };

    SncDivisor() = default;
    SncDivisor(int n, std::vector<std::string> components, StrataMap strata);

    int n() const { return n_; }
    const std::vector<std::string>& components() const { return components_; }
    std::size_t component_count() const { return components_.size(); }
    const StrataMap& strata() const { return strata_; }

    /// Components of E_I (empty when I does not meet).
    const std::vector<StratumComponent>& stratum(const IndexSet& subset) const;

    /// Where an id lives, if anywhere. Component labels resolve to singletons.
    std::optional<Location> locate(const std::string& id) const;
    /// Stratum component by id; throws SncError(UnknownId) when absent.
    const StratumComponent& component_by_id(const std::string& id) const;

    /// Largest |I| with a nonempty stratum (1 when there are only components).
    std::size_t depth() const;

    /// "{1,2,3}" using component labels.
    std::string subset_label(const IndexSet& subset) const;

    friend bool operator==(const SncDivisor& a, const SncDivisor& b)
    {
        return a.n_ == b.n_ && a.components_ == b.components_ && a.strata_ == b.strata_;
    }

private:
    int n_ = 0;
    std::vector<std::string> components_;
    StrataMap strata_;
    std::map<std::string, Location> index_;
};

/// Checks every axiom; throws SncError on the first violation.
void validate_snc(const SncDivisor& d);

/// Id of the ancestor of `id` with the given subset, following parents.
/// The subset must be a nonempty subset of the id's own subset.
std::string ancestor(const SncDivisor& d, const std::string& id, const IndexSet& subset);

} // namespace dualk
