#ifndef WSX_IO_HH
#define WSX_IO_HH 1

#include <wsx/canonical.hh>
#include <wsx/extension.hh>
#include <wsx/gamma.hh>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wsx::io
{
    using Json = nlohmann::ordered_json;

    /// Throws FileFormat on malformed JSON.
    auto parse_json(std::string_view text) -> Json;

    auto read_file(const std::filesystem::path & path) -> std::string;

    /// Deterministic pretty printing: objects one key per line in stored order,
    /// arrays of scalars on one line. Ends with a newline.
    auto dump(const Json & value) -> std::string;

    /// Unbound theta text; parsed once the signature is known.
    struct ThetaText
    {
        std::vector<std::string> vars;
        std::string term;

        auto bind(const Signature & signature) const -> ThetaSpec;
    };

    auto theta_from_json(const Json & value) -> ThetaText;
    auto theta_to_json(const ThetaSpec & theta) -> Json;

    auto signature_from_json(const Json & value) -> Signature;
    auto signature_to_json(const Signature & signature) -> Json;

    /// An inline algebra object, or a string path relative to base_dir.
    auto algebra_from_json(const Json & value, const std::filesystem::path & base_dir) -> FiniteAlgebra;
    auto algebra_to_json(const FiniteAlgebra & algebra) -> Json;

    auto fn_table_from_json(const Json & value, std::size_t cod_size, const std::string & what) -> FnTable;
    auto witness_from_json(const Json & value, std::size_t kernel_size) -> Witness;
    auto witness_to_json(const Witness & w) -> Json;

    auto equations_from_json(const Json & value, const Signature & signature) -> std::vector<Equation>;
    auto equations_to_json(const std::vector<Equation> & equations) -> Json;

    struct ExtensionDocument
    {
        SplitExtension extension;
        std::optional<Witness> witness;
        std::vector<Equation> axioms;
    };

    /// An inline extension object, or a string path relative to base_dir.
    auto extension_from_json(const Json & value, const std::filesystem::path & base_dir) -> ExtensionDocument;
    auto extension_to_json(const SplitExtension & e, const Witness * w, const std::vector<Equation> & axioms) -> Json;

    struct HomDocument
    {
        FiniteAlgebra domain;
        FnTable map;
    };

    /// {"B_prime": algebra, "f": [...]}; the codomain size comes from the caller.
    auto hom_from_json(const Json & value, const std::filesystem::path & base_dir, std::size_t cod_size) -> HomDocument;

    auto morphism_from_json(const Json & value, const std::filesystem::path & base_dir) -> ExtensionMorphism;

    auto law_report_to_json(const LawReport & report) -> Json;

    /// The canonical form plus everything gamma_from_json needs to rebuild it.
    auto canonical_to_json(const CanonicalExtension & c, const std::vector<Equation> & axioms,
            const LawReport & verification) -> Json;

    auto gamma_from_json(const Json & value, const std::filesystem::path & base_dir) -> GammaData;
}

#endif
