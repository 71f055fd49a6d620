#ifndef WSX_GAMMA_HH
#define WSX_GAMMA_HH 1

#include <wsx/canonical.hh>

#include <optional>
#include <vector>

namespace wsx
{
    /// Raw action data from which a split extension can be assembled.
    struct GammaData
    {
        FiniteAlgebra kernel;
        FiniteAlgebra base;
        ThetaSpec theta;
        GammaTables gamma;
        std::vector<Equation> axioms;
        /// X^n code sigma(b) with iota(b) = (sigma(b), b); all zero unless stated otherwise.
        std::vector<std::size_t> section;
        /// Optional explicit gamma_id table over ambient codes.
        std::optional<std::vector<std::size_t>> gamma_id;

        auto n() const -> std::size_t
        {
            return theta.n();
        }

        auto coder() const -> TupleCoder;
    };

    /// GammaData of a canonical extension, carrying its section and gamma_id.
    auto extract_gamma(const CanonicalExtension & c, std::vector<Equation> axioms) -> GammaData;

    /// Shape and range checks; throws ArityMismatch, SizeMismatch, EntryOutOfRange.
    void validate_gamma_shape(const GammaData & g);

    /**
     * Y as the fixpoint set of gamma_theta(0, ..., 0, -), cross-checked against
     * gamma_id (when present) and against each extra term omega with
     * omega(0, ..., 0, x) = x. Throws MembershipDiscrepancy.
     */
    auto compute_y(const GammaData & g, const std::vector<TermSpec> & extra_terms = {}) -> std::vector<std::size_t>;

    struct GammaConditions
    {
        /// Entries: "axioms", "kernel_map_unique", "kernel_map_homomorphism", "witness_condition".
        LawReport conditions;
        std::vector<std::size_t> y;
        bool section_in_y = false;

        auto passed() const -> bool
        {
            return conditions.passed();
        }
    };

    auto check_conditions(const GammaData & g, const SearchLimits & limits = {}) -> GammaConditions;

    struct RebuiltExtension
    {
        SplitExtension extension;
        Witness witness;
        std::vector<std::size_t> y;
    };

    /// Throws ConditionsFailed or IotaNotInY.
    auto build_extension_from_gamma(const GammaData & g, const SearchLimits & limits = {}) -> RebuiltExtension;
}

#endif
