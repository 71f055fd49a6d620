#ifndef WSX_CANONICAL_HH
#define WSX_CANONICAL_HH 1

#include <wsx/extension.hh>
#include <wsx/tuple_code.hh>

#include <optional>
#include <vector>

namespace wsx
{
    /// Per-operation gamma tables. Entry j of gamma[op] is the code in X^n of
    /// gamma_op at the argument tuple whose row-major index over ambient codes is j.
    using GammaTables = std::vector<std::vector<std::size_t>>;

    /**
     * The algebra on all of X^n x B (ambient codes) whose operations are
     * (gamma_op, op_B). Restricted to Y it is the transported structure.
     */
    auto ambient_algebra(const FiniteAlgebra & kernel, const FiniteAlgebra & base, std::size_t n,
            const GammaTables & gamma) -> FiniteAlgebra;

    /**
     * The middle algebra re-expressed on a subset Y of X^n x B. Elements of Y
     * are ambient codes in increasing order; every map into Y below uses
     * positions in `y`.
     */
    struct CanonicalExtension
    {
        SplitExtension source;
        ThetaSpec theta;
        Witness witness;

        std::vector<std::size_t> y;
        FiniteAlgebra y_algebra;
        GammaTables gamma;
        /// q(phi(t)) for every ambient code t, as a code of X^n.
        std::vector<std::size_t> gamma_id;
        FnTable psi;
        FnTable phi;
        FnTable k_prime;
        FnTable pi_base;
        /// psi o s; equals b |-> (0, ..., 0, b) exactly when q_i(s(b)) = 0.
        FnTable iota_base;

        auto n() const -> std::size_t
        {
            return witness.n();
        }

        auto coder() const -> TupleCoder;
        auto kernel_coder() const -> TupleCoder;
        auto position_in_y(std::size_t ambient_code) const -> std::optional<Element>;
        auto as_extension() const -> SplitExtension;
        /// The transported q_i: coordinate projections on Y.
        auto projection_witness() const -> Witness;
    };

    /// a |-> (q_1 a, ..., q_n a, p a) as ambient codes.
    auto psi(const SplitExtension & e, const Witness & w) -> FnTable;

    /// (x_1..x_n, b) |-> theta(k x_1, ..., k x_n, s b), total on X^n x B.
    auto phi(const SplitExtension & e, const ThetaSpec & theta) -> FnTable;

    /**
     * Builds Y twice (image of psi, fixpoint of psi o phi) and the operations
     * twice (transport, gamma formula); disagreement is an internal error.
     * Throws WitnessInvalid.
     */
    auto build_canonical(const SplitExtension & e, const ThetaSpec & theta, const Witness & w,
            const SearchLimits & limits = {}) -> CanonicalExtension;

    auto verify_isomorphism(const SplitExtension & e, const CanonicalExtension & c, const Witness & w) -> LawReport;

    /**
     * gamma_omega for an arbitrary term over (X^n x B)^m, m = number of omega's
     * variables, as X^n codes. Computed by q(omega_A(phi t^1, ..., phi t^m)) and,
     * unless omega is a bare variable, also by evaluating omega in the ambient
     * algebra; the two must agree.
     */
    auto gamma_table(const CanonicalExtension & c, const TermSpec & omega, const SearchLimits & limits = {})
        -> std::vector<std::size_t>;

    struct MembershipPredicates
    {
        /// gamma_id(x, b) = x
        std::vector<bool> via_identity;
        /// gamma_theta(0, ..., 0, (x, b)) = x
        std::vector<bool> via_theta;
    };

    /// Both Y predicates on every ambient code; throws Internal if they differ.
    auto membership_predicates(const CanonicalExtension & c) -> MembershipPredicates;

    struct SigmaTau
    {
        /// sigma_i(b, x, b') = q_i(s b + k x + s b'), row-major over (b, x, b').
        std::vector<Element> sigma[2];
        /// tau_i(x, b, x') = q_i(k x + s b + k x'), row-major over (x, b, x').
        std::vector<Element> tau[2];
        std::size_t pairs_checked = 0;
        std::size_t failures = 0;
        std::optional<std::pair<std::size_t, std::size_t>> first_failure;

        auto holds() const -> bool
        {
            return failures == 0;
        }
    };

    /**
     * For monoids with theta(x, y, z) = x + z + y: splits gamma_+ into the
     * sigma/tau tables and checks the decomposition at every pair of ambient
     * tuples. Throws WrongSignature or WrongTheta.
     */
    auto sigma_tau_decompose(const SplitExtension & e, const ThetaSpec & theta, const Witness & w) -> SigmaTau;
}

#endif
