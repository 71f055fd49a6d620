#ifndef WSX_EXTENSION_HH
#define WSX_EXTENSION_HH 1

#include <wsx/algebra.hh>
#include <wsx/report.hh>
#include <wsx/term.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace wsx
{
    /// kernel --inclusion--> middle --projection--> base, with section: base -> middle.
    struct SplitExtension
    {
        FiniteAlgebra kernel;
        FiniteAlgebra middle;
        FiniteAlgebra base;
        FnTable inclusion;
        FnTable projection;
        FnTable section;
    };

    /// n functions middle -> kernel with
    /// theta(k q_1(a), ..., k q_n(a), s p(a)) = a for every a.
    struct Witness
    {
        std::vector<FnTable> q;

        auto n() const -> std::size_t
        {
            return q.size();
        }

        auto tuple_at(Element a) const -> std::vector<Element>;

        auto operator== (const Witness &) const -> bool = default;
    };

    /**
     * Homomorphism laws for all three maps, the section law, injectivity of the
     * inclusion, and the kernel law im(k) = p^-1(0). Throws SizeMismatch or
     * SignatureMismatch when the tables cannot be read against the algebras.
     */
    auto validate_split_extension(const SplitExtension & e) -> LawReport;

    /// Throws InvalidExtension listing the failed laws.
    void require_valid(const SplitExtension & e);

    struct WitnessCheck
    {
        bool ok = true;
        std::optional<Element> counterexample;
        std::string problem;

        explicit operator bool() const
        {
            return ok;
        }
    };

    auto check_witness(const SplitExtension & e, const ThetaSpec & theta, const Witness & w) -> WitnessCheck;

    struct WitnessSearchOptions
    {
        bool normalize = true;
        /// Maximum number of witnesses materialized; nullopt for all of them.
        std::optional<std::uint64_t> limit;
    };

    struct WitnessSearchResult
    {
        /// fibres[a] is T(a): the admissible tuples at a, as codes of X^n, in increasing order.
        std::vector<std::vector<std::size_t>> fibres;
        std::vector<Witness> witnesses;
        /// Product of fibre sizes, saturating.
        std::uint64_t total = 0;
        bool total_saturated = false;

        auto exists() const -> bool
        {
            return total > 0;
        }
    };

    /**
     * Per-element witness search. Each (x_1..x_n, b) in X^n x B is evaluated
     * once; T(a) collects the tuples with theta(k x, s p(a)) = a. Witnesses are
     * the choice functions a -> T(a), enumerated with a = 0 most significant
     * and tuples in lexicographic order.
     */
    auto find_witnesses(const SplitExtension & e, const ThetaSpec & theta, const WitnessSearchOptions & options = {},
            const SearchLimits & limits = {}) -> WitnessSearchResult;

    /// q_i(a) = k^-1(alpha_i(a, s p(a))), after checking the alpha identities on the middle algebra.
    auto semiabelian_witness(const SplitExtension & e, const ThetaSpec & theta, const std::vector<TermSpec> & alphas)
        -> Witness;

    /// Bijectivity of (x_1..x_n, b) |-> theta(k x_1, ..., k x_n, s b): each a decomposes exactly once.
    auto is_schreier(const SplitExtension & e, const ThetaSpec & theta, const SearchLimits & limits = {}) -> bool;

    struct PulledBackExtension
    {
        SplitExtension extension;
        Witness witness;
        /// (a, b') |-> a
        FnTable to_middle;
        std::vector<std::pair<Element, Element>> pairs;
    };

    /// Pullback of the projection along f: base' -> base, with q'_i(a, b') = q_i(a).
    auto pullback_extension(const SplitExtension & e, const FiniteAlgebra & base_prime, const FnTable & f,
            const Witness & w) -> PulledBackExtension;

    struct ProductCheck
    {
        bool ok = true;
        /// q_1..q_n: X -> X with theta(q_1 x, ..., q_n x, 0) = x, lexicographically first tuple per x.
        std::vector<FnTable> choice;
        std::optional<Element> obstruction;

        explicit operator bool() const
        {
            return ok;
        }
    };

    /// Whether X --id--> X --> 1 admits a witness.
    auto product_extension_check(const FiniteAlgebra & kernel, const ThetaSpec & theta,
            const SearchLimits & limits = {}) -> ProductCheck;

    struct ExtensionMorphism
    {
        SplitExtension source;
        SplitExtension target;
        FnTable on_kernel;
        FnTable on_middle;
        FnTable on_base;
    };

    /// Homomorphism laws and the three commuting squares.
    auto validate_morphism(const ExtensionMorphism & m) -> LawReport;

    struct SurjectivityReport
    {
        bool kernel_surjective;
        bool middle_surjective;
        bool base_surjective;
        /// im(g k_1) and im(g s_1) generate the target middle algebra.
        bool jointly_generating;
        /// The target admits a witness for the supplied theta.
        bool target_in_class;
        bool lemma_applicable;
        bool lemma_holds;
    };

    /// Throws InvalidMorphism when validate_morphism fails.
    auto check_morphism_surjectivity(const ExtensionMorphism & m, const ThetaSpec & theta,
            const SearchLimits & limits = {}) -> SurjectivityReport;
}

#endif
