#include <wsx/commands.hh>
#include <wsx/error.hh>

#include <algorithm>

using std::size_t;
using std::string;
using std::to_string;
using std::vector;
namespace fs = std::filesystem;

namespace wsx
{
    using io::Json;

    namespace
    {
        auto header(const string & command) -> Json
        {
            Json out;
            out["schema_version"] = 1;
            out["command"] = command;
            return out;
        }

        auto load(const fs::path & path) -> Json
        {
            return io::parse_json(io::read_file(path));
        }

        auto base_dir(const fs::path & path) -> fs::path
        {
            return path.parent_path();
        }

        auto list(const vector<Element> & values) -> string
        {
            string out = "[";
            for (size_t i = 0 ; i < values.size() ; ++i)
                out += (i ? ", " : "") + to_string(values[i]);
            return out + "]";
        }

        auto tuple(const vector<Element> & values) -> string
        {
            string out = "(";
            for (size_t i = 0 ; i < values.size() ; ++i)
                out += (i ? ", " : "") + to_string(values[i]);
            return out + ")";
        }

        auto laws_text(const LawReport & report) -> string
        {
            string out;
            for (auto & r : report.entries) {
                out += string("  [") + (r.passed ? "pass" : "FAIL") + "] " + r.law;
                if (! r.detail.empty())
                    out += ": " + r.detail;
                out += "\n";
            }
            return out;
        }

        auto witness_text(const Witness & w) -> string
        {
            string out;
            for (size_t i = 0 ; i < w.n() ; ++i)
                out += (i ? ", q" : "q") + to_string(i + 1) + " = " + list(w.q[i].values());
            return out;
        }

        auto witness_q_json(const Witness & w) -> Json
        {
            Json out = Json::array();
            for (auto & qi : w.q)
                out.push_back(qi.values());
            return out;
        }

        auto sizes_json(const SplitExtension & e, size_t n) -> Json
        {
            Json out;
            out["X"] = e.kernel.size();
            out["A"] = e.middle.size();
            out["B"] = e.base.size();
            out["n"] = n;
            out["X_times_B"] = saturating_mul(e.kernel.size(), e.base.size());
            out["ambient"] = saturating_mul(saturating_pow(e.kernel.size(), n), e.base.size());
            return out;
        }

        auto sizes_text(const SplitExtension & e, size_t n) -> string
        {
            string out = "|A| = " + to_string(e.middle.size()) + ", |X×B| = "
                + to_string(saturating_mul(e.kernel.size(), e.base.size()));
            if (n != 1)
                out += ", |X^" + to_string(n) + "×B| = "
                    + to_string(saturating_mul(saturating_pow(e.kernel.size(), n), e.base.size()));
            return out + "\n";
        }

        auto theta_text(const ThetaSpec & theta) -> string
        {
            string vars;
            for (auto & v : theta.vars())
                vars += (vars.empty() ? "" : " ") + v;
            return "theta (" + vars + "): " + to_sexpr(theta.term()) + "\n";
        }

        /// Tracks whether an exception came from reading inputs (usage error) or from checking them.
        struct Phase
        {
            bool loading = true;
        };

        template <typename Body>
        auto guarded(const string & command, Body && body) -> CommandResult
        {
            Phase phase;
            try {
                return body(phase);
            }
            catch (const Error & e) {
                int code = phase.loading ? exit_code::usage : exit_code::invalid;
                if (e.code() == ErrorCode::SearchBudgetExceeded)
                    code = exit_code::budget;
                else if (e.code() == ErrorCode::Internal)
                    code = exit_code::internal;
                return error_result(command, code, string(error_code_name(e.code())), e.what());
            }
            catch (const std::exception & e) {
                return error_result(command, exit_code::internal, "Internal", e.what());
            }
        }

        auto first_witness(const SplitExtension & e, const ThetaSpec & theta, const CommandOptions & options)
            -> std::optional<Witness>
        {
            WitnessSearchOptions search{ options.normalize, 1 };
            auto result = find_witnesses(e, theta, search, options.limits);
            if (result.witnesses.empty())
                return std::nullopt;
            return result.witnesses.front();
        }
    }

    auto error_result(const string & command, int code, const string & error_name, const string & message)
        -> CommandResult
    {
        CommandResult result;
        result.exit_code = code;
        result.report = header(command);
        result.report["status"] = "error";
        result.report["exit_code"] = code;
        Json error;
        error["code"] = error_name;
        error["message"] = message;
        result.report["error"] = error;
        result.text = command + ": error: " + message + "\n";
        return result;
    }

    auto run_check(const fs::path & path, const io::ThetaText & theta_text_in, const CommandOptions & options)
        -> CommandResult
    {
        return guarded("check", [&] (Phase & phase) {
            auto doc = io::extension_from_json(load(path), base_dir(path));
            auto theta = theta_text_in.bind(doc.extension.middle.signature());
            phase.loading = false;
            auto & e = doc.extension;

            CommandResult result;
            auto & report = result.report = header("check");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(theta);
            report["sizes"] = sizes_json(e, theta.n());
            text += theta_text(theta);
            text += sizes_text(e, theta.n());

            auto validation = validate_split_extension(e);
            report["valid"] = validation.passed();
            report["validation"] = io::law_report_to_json(validation);
            if (! validation.passed()) {
                text += "extension: INVALID\n" + laws_text(validation);
                result.exit_code = exit_code::invalid;
                report["status"] = "invalid";
                report["exit_code"] = result.exit_code;
                return result;
            }
            text += "extension: valid\n";

            auto search = find_witnesses(e, theta, WitnessSearchOptions{ options.normalize, options.limit },
                    options.limits);
            auto kernel_coder = TupleCoder::power(e.kernel.size(), theta.n());

            Json fibres = Json::array();
            std::optional<Element> empty_fibre;
            for (size_t a = 0 ; a < search.fibres.size() ; ++a) {
                Json f = Json::array();
                for (auto code : search.fibres[a])
                    f.push_back(kernel_coder.decode(code));
                fibres.push_back(f);
                if (search.fibres[a].empty() && ! empty_fibre)
                    empty_fibre = static_cast<Element>(a);
            }

            Json witnesses;
            witnesses["normalized"] = options.normalize;
            witnesses["count"] = search.total;
            witnesses["count_saturated"] = search.total_saturated;
            witnesses["limit"] = options.limit;
            witnesses["listed"] = search.witnesses.size();
            Json listed = Json::array();
            for (auto & w : search.witnesses)
                listed.push_back(witness_q_json(w));
            witnesses["list"] = listed;
            report["witnesses"] = witnesses;
            report["fibres"] = fibres;

            text += "witnesses" + string(options.normalize ? " (normalized)" : "") + ": "
                + (search.total_saturated ? "more than " : "") + to_string(search.total) + "\n";
            for (auto & w : search.witnesses)
                text += "  " + witness_text(w) + "\n";
            if (search.witnesses.size() < search.total || search.total_saturated)
                text += "  (listing capped at " + to_string(options.limit) + ")\n";
            if (empty_fibre)
                text += "no decomposition of a = " + to_string(*empty_fibre) + "\n";

            bool schreier = is_schreier(e, theta, options.limits);
            report["schreier"] = schreier;
            text += string("schreier: ") + (schreier ? "yes" : "no") + "\n";

            if (doc.witness) {
                auto check = check_witness(e, theta, *doc.witness);
                Json given;
                given["ok"] = check.ok;
                given["problem"] = check.problem;
                report["given_witness"] = given;
                text += string("witness from file: ") + (check.ok ? "valid" : "INVALID: " + check.problem) + "\n";
            }

            result.exit_code = search.exists() ? exit_code::ok : exit_code::negative;
            report["status"] = search.exists() ? "weakly_schreier" : "no_witness";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }

    auto run_canonicalize(const fs::path & path, const io::ThetaText & theta_text_in, const CommandOptions & options)
        -> CommandResult
    {
        return guarded("canonicalize", [&] (Phase & phase) {
            auto doc = io::extension_from_json(load(path), base_dir(path));
            auto theta = theta_text_in.bind(doc.extension.middle.signature());
            phase.loading = false;
            auto & e = doc.extension;
            require_valid(e);

            CommandResult result;
            auto & report = result.report = header("canonicalize");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(theta);
            text += theta_text(theta);

            // a stored witness for a different theta arity is ignored
            auto witness = doc.witness && doc.witness->n() == theta.n() ? doc.witness : std::nullopt;
            bool from_file = witness.has_value();
            report["witness_source"] = from_file ? "file" : "search";
            if (! witness)
                witness = first_witness(e, theta, options);
            if (! witness) {
                text += "no witness exists\n";
                result.exit_code = exit_code::negative;
                report["status"] = "no_witness";
                report["exit_code"] = result.exit_code;
                return result;
            }
            report["witness"] = witness_q_json(*witness);
            text += "witness (" + string(from_file ? "from file" : "first found") + "): " + witness_text(*witness) + "\n";

            auto c = build_canonical(e, theta, *witness, options.limits);
            auto verification = verify_isomorphism(e, c, *witness);
            auto coder = c.coder();

            Json y = Json::array();
            text += "Y (" + to_string(c.y.size()) + " elements):\n";
            for (auto code : c.y) {
                y.push_back(coder.decode(code));
                text += "  " + tuple(coder.decode(code)) + "\n";
            }
            report["Y"] = y;
            report["k_prime"] = c.k_prime.values();
            report["verification"] = io::law_report_to_json(verification);
            text += "verification:\n" + laws_text(verification);

            result.artifact = io::dump(io::canonical_to_json(c, doc.axioms, verification));
            result.exit_code = verification.passed() ? exit_code::ok : exit_code::internal;
            report["status"] = verification.passed() ? "ok" : "verification_failed";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }

    auto run_gamma_check(const fs::path & path, const CommandOptions & options) -> CommandResult
    {
        return guarded("gamma-check", [&] (Phase & phase) {
            auto g = io::gamma_from_json(load(path), base_dir(path));
            validate_gamma_shape(g);
            phase.loading = false;

            CommandResult result;
            auto & report = result.report = header("gamma-check");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(g.theta);
            text += theta_text(g.theta);

            LawReport membership;
            try {
                compute_y(g);
                membership.add("membership", true);
            }
            catch (const Error & e) {
                if (e.code() != ErrorCode::MembershipDiscrepancy)
                    throw;
                membership.add("membership", false, e.what());
            }

            auto conditions = check_conditions(g, options.limits);
            report["Y_size"] = conditions.y.size();
            report["membership"] = io::law_report_to_json(membership);
            report["conditions"] = io::law_report_to_json(conditions.conditions);
            report["section_in_Y"] = conditions.section_in_y;
            text += "|Y| = " + to_string(conditions.y.size()) + "\n";
            text += "membership:\n" + laws_text(membership);
            text += "conditions:\n" + laws_text(conditions.conditions);

            bool ok = membership.passed() && conditions.passed();
            if (ok && ! conditions.section_in_y) {
                text += "section: some (section(b), b) lies outside Y\n";
                ok = false;
            }
            if (ok) {
                auto rebuilt = build_extension_from_gamma(g, options.limits);
                result.artifact = io::dump(io::extension_to_json(rebuilt.extension, &rebuilt.witness, g.axioms));
                text += "rebuilt extension: valid, |A| = " + to_string(rebuilt.extension.middle.size()) + "\n";
            }

            result.exit_code = ok ? exit_code::ok : exit_code::negative;
            report["status"] = ok ? "ok" : "conditions_failed";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }

    auto run_pullback(const fs::path & path, const fs::path & hom_path, const io::ThetaText & theta_text_in,
            const CommandOptions & options) -> CommandResult
    {
        return guarded("pullback", [&] (Phase & phase) {
            auto doc = io::extension_from_json(load(path), base_dir(path));
            auto theta = theta_text_in.bind(doc.extension.middle.signature());
            auto hom = io::hom_from_json(load(hom_path), base_dir(hom_path), doc.extension.base.size());
            phase.loading = false;
            auto & e = doc.extension;
            require_valid(e);

            CommandResult result;
            auto & report = result.report = header("pullback");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(theta);
            text += theta_text(theta);

            auto witness = doc.witness && doc.witness->n() == theta.n() ? doc.witness : std::nullopt;
            report["witness_source"] = witness ? "file" : "search";
            if (witness) {
                auto check = check_witness(e, theta, *witness);
                if (! check)
                    throw Error{ ErrorCode::WitnessInvalid, "witness from file: " + check.problem };
            }
            else
                witness = first_witness(e, theta, options);
            if (! witness) {
                text += "no witness exists\n";
                result.exit_code = exit_code::negative;
                report["status"] = "no_witness";
                report["exit_code"] = result.exit_code;
                return result;
            }

            auto pb = pullback_extension(e, hom.domain, hom.map, *witness);
            auto validation = validate_split_extension(pb.extension);
            auto check = check_witness(pb.extension, theta, pb.witness);
            validation.add("transported_witness", check.ok, check.problem);

            Json pairs = Json::array();
            for (auto & [a, b] : pb.pairs)
                pairs.push_back(vector<Element>{ a, b });
            report["pairs"] = pairs;
            report["witness"] = witness_q_json(pb.witness);
            report["validation"] = io::law_report_to_json(validation);
            text += "pullback middle algebra: " + to_string(pb.extension.middle.size()) + " elements\n";
            text += "transported witness: " + witness_text(pb.witness) + "\n";
            text += "validation:\n" + laws_text(validation);

            result.artifact = io::dump(io::extension_to_json(pb.extension, &pb.witness, doc.axioms));
            result.exit_code = validation.passed() ? exit_code::ok : exit_code::internal;
            report["status"] = validation.passed() ? "ok" : "validation_failed";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }

    auto run_product_check(const fs::path & path, const io::ThetaText & theta_text_in, const CommandOptions & options)
        -> CommandResult
    {
        return guarded("product-check", [&] (Phase & phase) {
            auto X = io::algebra_from_json(load(path), base_dir(path));
            auto theta = theta_text_in.bind(X.signature());
            phase.loading = false;

            CommandResult result;
            auto & report = result.report = header("product-check");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(theta);
            text += theta_text(theta);

            auto check = product_extension_check(X, theta, options.limits);
            report["ok"] = check.ok;
            if (check.ok) {
                Json choice = Json::array();
                string line;
                for (size_t i = 0 ; i < check.choice.size() ; ++i) {
                    choice.push_back(check.choice[i].values());
                    line += (i ? ", q" : "q") + to_string(i + 1) + " = " + list(check.choice[i].values());
                }
                report["choice"] = choice;
                text += "product extension admits a witness: " + line + "\n";
            }
            else {
                report["obstruction"] = *check.obstruction;
                text += "no witness: x = " + to_string(*check.obstruction) + " is not theta(q(x), 0) for any q\n";
            }
            result.exit_code = check.ok ? exit_code::ok : exit_code::negative;
            report["status"] = check.ok ? "ok" : "obstructed";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }

    auto run_morphism_check(const fs::path & path, const io::ThetaText & theta_text_in, const CommandOptions & options)
        -> CommandResult
    {
        return guarded("morphism-check", [&] (Phase & phase) {
            auto m = io::morphism_from_json(load(path), base_dir(path));
            auto theta = theta_text_in.bind(m.target.middle.signature());
            phase.loading = false;

            CommandResult result;
            auto & report = result.report = header("morphism-check");
            auto & text = result.text;
            report["theta"] = io::theta_to_json(theta);
            text += theta_text(theta);

            auto laws = validate_morphism(m);
            report["laws"] = io::law_report_to_json(laws);
            text += "morphism laws:\n" + laws_text(laws);
            if (! laws.passed()) {
                result.exit_code = exit_code::invalid;
                report["status"] = "invalid";
                report["exit_code"] = result.exit_code;
                return result;
            }

            auto s = check_morphism_surjectivity(m, theta, options.limits);
            Json sj;
            sj["kernel_surjective"] = s.kernel_surjective;
            sj["middle_surjective"] = s.middle_surjective;
            sj["base_surjective"] = s.base_surjective;
            sj["jointly_generating"] = s.jointly_generating;
            sj["target_in_class"] = s.target_in_class;
            sj["lemma_applicable"] = s.lemma_applicable;
            sj["lemma_holds"] = s.lemma_holds;
            report["surjectivity"] = sj;
            auto yn = [] (bool b) { return b ? "yes" : "no"; };
            text += string("f surjective: ") + yn(s.kernel_surjective) + "\n";
            text += string("g surjective: ") + yn(s.middle_surjective) + "\n";
            text += string("h surjective: ") + yn(s.base_surjective) + "\n";
            text += string("images of k and s generate: ") + yn(s.jointly_generating) + "\n";
            text += string("target admits a witness: ") + yn(s.target_in_class) + "\n";
            if (s.lemma_applicable)
                text += string("f, h surjective onto a target in the class, so g must be: ")
                    + (s.lemma_holds ? "holds" : "VIOLATED") + "\n";

            bool ok = ! s.lemma_applicable || s.lemma_holds;
            result.exit_code = ok ? exit_code::ok : exit_code::negative;
            report["status"] = ok ? "ok" : "lemma_violated";
            report["exit_code"] = result.exit_code;
            return result;
        });
    }
}
