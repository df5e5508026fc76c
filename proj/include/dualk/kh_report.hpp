#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualk/abgroup.hpp"
#include "dualk/snc_divisor.hpp"
#include "dualk/spectral_page.hpp"

namespace dualk {

enum class FieldMode { algebraically_closed, general };

std::string to_string(FieldMode mode);
std::optional<FieldMode> parse_field_mode(const std::string& text);

/// T_E with T_E(k) = H^{n-1}(D(E), k^×), carried as a rank plus a finite part.
///
/// Torsion in H^{n-1}(D(E), Z) is kept in mu_part and flagged: reading the
/// group as H^{n-1}(D(E), Z) ⊗ k^× drops it, universal coefficients keep it.
struct TorusDescriptor {
    bool determined = true;
    std::size_t rank = 0;
    FgAbGroup mu_part;
    FieldMode field_mode = FieldMode::algebraically_closed;
    bool mu_discrepancy = false;
};

/// In general mode the torus is only determined when H_{n-2}(D(E), Z) is
/// torsion-free.
TorusDescriptor torus_descriptor(const FgAbGroup& hn1, bool hn2_homology_torsion_free, FieldMode mode);

/// NS(Δ^alt_p E) and the dimension of Pic^0(Δ^alt_p E).
struct PicardLevel {
    int p = 0;
    FgAbGroup ns;
    std::size_t pic0_dim = 0;
};

/// Picard data of the three (or, for n = 3, two) top levels. ns_maps[k] goes
/// from levels[k] to levels[k+1]. The level n-4 may be omitted for n > 3, in
/// which case it is treated as zero.
struct PicardInput {
    int n = 0;
    std::vector<PicardLevel> levels;
    std::vector<Hom> ns_maps;
    std::size_t coker_pic0_dim = 0;
    std::optional<FgAbGroup> ker_beta_known;
};

class LevelMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ComplexViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

void validate_picard(const PicardInput& pi);

struct NsAnalysis {
    FgAbGroup ker_ns;   // kernel of NS(Δ_{n-3}) -> NS(Δ_{n-2})
    FgAbGroup coker_ns; // its cokernel
    FgAbGroup gamma;    // ker_ns modulo the image of NS(Δ_{n-4})
    Hom ker_to_gamma;   // the quotient map
};

NsAnalysis ns_analysis(const PicardInput& pi);

/// A finitely generated group, known exactly or only as a quotient of `group`.
struct GroupTerm {
    FgAbGroup group;
    Determination determination = Determination::exact;

    static GroupTerm exact(FgAbGroup g) { return {std::move(g), Determination::exact}; }
    /// A quotient of the zero group is known to be zero.
    static GroupTerm quotient_of(FgAbGroup g);

    bool is_exact() const { return determination == Determination::exact; }
    std::size_t rank_min() const { return is_exact() ? group.free_rank() : 0; }
    std::size_t rank_max() const { return group.free_rank(); }

    friend bool operator==(const GroupTerm&, const GroupTerm&) = default;
};

/// 0 -> sub -> middle -> quotient -> 0 between finitely generated groups.
/// The middle group is filled in only when both ends are exact and the
/// sequence is known to split (free quotient or zero sub).
struct Extension {
    GroupTerm sub;
    GroupTerm quotient;
    std::optional<FgAbGroup> middle;
    bool split = false;
    std::size_t rank_min = 0;
    std::size_t rank_max = 0;
};

Extension make_extension(GroupTerm sub, GroupTerm quotient);

struct OneMotiveDescriptor {
    FgAbGroup lattice_Lprime; // ker(NS)
    FgAbGroup lattice_L;      // Γ
    Hom surjection;           // L' -> L
    TorusDescriptor torus;
    std::size_t abelian_dim = 0;
    std::string map_status = "opaque";
};

OneMotiveDescriptor one_motive_descriptor(const PicardInput& pi, const TorusDescriptor& torus);

/// H^{n-1}(E, G_m) as an extension of coker(Pic) by T_E(k), with coker(Pic)
/// itself described by coker(Pic^0) / ker(β) and coker(NS).
struct UnitsCohomology {
    TorusDescriptor torus;
    std::size_t coker_pic0_dim = 0;
    GroupTerm ker_beta; // image of the surjection ker(NS) ->> ker(β)
    FgAbGroup coker_ns;
    /// Set when the torus, its finite part and coker(Pic^0) all vanish, so
    /// that H^{n-1}(E, G_m) = coker(NS) exactly.
    std::optional<FgAbGroup> finitely_generated_value;
};

/// KH_{1-n}(X): H^{n-1}(E, G_m) / im(d_2^{n-3,0}) extended by H^{n-2}(D(E), Z).
struct KhGroupDescriptor {
    GroupTerm d2_image;
    bool d2_unknown = false;
    /// Divisible part (torus rank, abelian dimension) that is never materialized.
    std::size_t torus_rank = 0;
    std::size_t abelian_dim = 0;
    /// Present when the divisible part vanishes.
    std::optional<Extension> finitely_generated;
    /// Exact value, when determined.
    std::optional<FgAbGroup> value;
};

struct KhReport {
    int n = 0;
    FgAbGroup kh_top; // KH_{-n}(X) = H^{n-1}(D(E), Z)
    FgAbGroup h_n3;   // H^{n-3}(D(E), Z)
    FgAbGroup h_n2;   // H^{n-2}(D(E), Z)
    NsAnalysis ns;
    UnitsCohomology units;
    OneMotiveDescriptor one_motive;
    KhGroupDescriptor kh;
    Extension ker_alpha;
    Extension coker_alpha;
    bool n3_exact = false;
    std::vector<std::string> notes;
};

/// H^{n-1}(D(E), Z), reported as KH_{-n}(X).
FgAbGroup kh_top(const SncDivisor& d);

KhReport kh_report(const SncDivisor& d, const PicardInput& pi, FieldMode mode);

} // namespace dualk
