#include <wsx/io.hh>
#include <wsx/error.hh>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::to_string;
using std::vector;
namespace fs = std::filesystem;

namespace wsx::io
{
    namespace
    {
        [[noreturn]] void format_error(const string & message)
        {
            throw Error{ ErrorCode::FileFormat, message };
        }

        void require_object(const Json & value, const string & what, const std::set<string> & allowed,
                const std::set<string> & required)
        {
            if (! value.is_object())
                format_error(what + " must be a JSON object");
            for (auto & [key, _] : value.items())
                if (! allowed.count(key))
                    format_error(what + " has unknown key '" + key + "'");
            for (auto & key : required)
                if (! value.contains(key))
                    format_error(what + " is missing key '" + key + "'");
        }

        auto element(const Json & value, const string & what) -> Element
        {
            if (! value.is_number_integer() || value.get<std::int64_t>() < 0
                    || value.get<std::int64_t>() > std::numeric_limits<Element>::max())
                format_error(what + " must be a non-negative integer");
            return value.get<Element>();
        }

        auto string_list(const Json & value, const string & what) -> vector<string>
        {
            if (! value.is_array())
                format_error(what + " must be an array of strings");
            vector<string> out;
            for (auto & v : value) {
                if (! v.is_string())
                    format_error(what + " must be an array of strings");
                out.push_back(v.get<string>());
            }
            return out;
        }

        template <typename Leaf>
        void flatten(const Json & value, unsigned depth, size_t size, const string & what,
                const std::function<Leaf (const Json &)> & leaf, vector<Leaf> & out)
        {
            if (depth == 0) {
                out.push_back(leaf(value));
                return;
            }
            if (! value.is_array() || value.size() != size)
                format_error(what + ": expected nested arrays of length " + to_string(size));
            for (auto & v : value)
                flatten(v, depth - 1, size, what, leaf, out);
        }

        template <typename Leaf>
        auto nest(const vector<Leaf> & flat, size_t & pos, unsigned depth, size_t size,
                const std::function<Json (const Leaf &)> & leaf) -> Json
        {
            if (depth == 0)
                return leaf(flat[pos++]);
            Json out = Json::array();
            for (size_t i = 0 ; i < size ; ++i)
                out.push_back(nest(flat, pos, depth - 1, size, leaf));
            return out;
        }

        auto nested_elements(const vector<Element> & flat, unsigned arity, size_t size) -> Json
        {
            size_t pos = 0;
            return nest<Element>(flat, pos, arity, size, [] (const Element & e) { return Json(e); });
        }

        auto resolve(const Json & value, const fs::path & base_dir, const string & what) -> std::pair<Json, fs::path>
        {
            if (value.is_string()) {
                auto path = base_dir / value.get<string>();
                return { parse_json(read_file(path)), path.parent_path() };
            }
            if (! value.is_object())
                format_error(what + " must be an object or a relative path");
            return { value, base_dir };
        }

        void dump_into(const Json & value, int indent, string & out)
        {
            auto pad = [&] (int n) { out.append(static_cast<size_t>(n), ' '); };
            if (value.is_object()) {
                if (value.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                size_t i = 0;
                for (auto & [key, v] : value.items()) {
                    pad(indent + 2);
                    out += Json(key).dump() + ": ";
                    dump_into(v, indent + 2, out);
                    out += ++i < value.size() ? ",\n" : "\n";
                }
                pad(indent);
                out += "}";
            }
            else if (value.is_array()) {
                bool flat = true;
                for (auto & v : value)
                    flat = flat && ! v.is_structured();
                if (flat) {
                    out += "[";
                    for (size_t i = 0 ; i < value.size() ; ++i)
                        out += (i ? ", " : "") + value[i].dump();
                    out += "]";
                    return;
                }
                out += "[\n";
                for (size_t i = 0 ; i < value.size() ; ++i) {
                    pad(indent + 2);
                    dump_into(value[i], indent + 2, out);
                    out += i + 1 < value.size() ? ",\n" : "\n";
                }
                pad(indent);
                out += "]";
            }
            else
                out += value.dump();
        }
    }

    auto parse_json(std::string_view text) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const nlohmann::json::parse_error & e) {
            format_error(string("malformed JSON: ") + e.what());
        }
    }

    auto read_file(const fs::path & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            format_error("cannot read '" + path.string() + "'");
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }

    auto dump(const Json & value) -> string
    {
        string out;
        dump_into(value, 0, out);
        out += "\n";
        return out;
    }

    auto ThetaText::bind(const Signature & signature) const -> ThetaSpec
    {
        return parse_theta(vars, term, signature);
    }

    auto theta_from_json(const Json & value) -> ThetaText
    {
        require_object(value, "theta", { "vars", "term" }, { "vars", "term" });
        if (! value["term"].is_string())
            format_error("theta term must be a string");
        return ThetaText{ string_list(value["vars"], "theta vars"), value["term"].get<string>() };
    }

    auto theta_to_json(const ThetaSpec & theta) -> Json
    {
        Json out;
        out["vars"] = theta.vars();
        out["term"] = to_sexpr(theta.term());
        return out;
    }

    auto signature_from_json(const Json & value) -> Signature
    {
        require_object(value, "signature", { "ops", "constant" }, { "ops", "constant" });
        if (! value["ops"].is_array() || ! value["constant"].is_string())
            format_error("signature needs an 'ops' array and a 'constant' name");
        vector<OperationSymbol> ops;
        for (auto & op : value["ops"]) {
            require_object(op, "operation", { "name", "arity" }, { "name", "arity" });
            if (! op["name"].is_string())
                format_error("operation name must be a string");
            ops.push_back(OperationSymbol{ op["name"].get<string>(), element(op["arity"], "arity") });
        }
        return Signature{ std::move(ops), value["constant"].get<string>() };
    }

    auto signature_to_json(const Signature & signature) -> Json
    {
        Json ops = Json::array();
        for (auto & op : signature.ops()) {
            Json o;
            o["name"] = op.name;
            o["arity"] = op.arity;
            ops.push_back(o);
        }
        Json out;
        out["ops"] = ops;
        out["constant"] = signature.constant_name();
        return out;
    }

    auto algebra_from_json(const Json & raw, const fs::path & base_dir) -> FiniteAlgebra
    {
        auto [value, dir] = resolve(raw, base_dir, "algebra");
        require_object(value, "algebra", { "signature", "size", "tables", "element_names" },
                { "signature", "size", "tables" });
        auto signature = signature_from_json(value["signature"]);
        auto size = element(value["size"], "size");
        if (size == 0)
            format_error("algebra size must be positive");
        if (value.contains("element_names")) {
            auto names = string_list(value["element_names"], "element_names");
            if (names.size() != size)
                format_error("element_names must have one entry per element");
        }
        auto & tables = value["tables"];
        if (! tables.is_object())
            format_error("tables must be an object keyed by operation name");
        std::map<string, vector<Element>> flat;
        for (auto & [name, table] : tables.items()) {
            auto op = signature.find(name);
            if (! op)
                throw Error{ ErrorCode::UnknownSymbol, "table for unknown operation '" + name + "'" };
            vector<Element> entries;
            try {
                flatten<Element>(table, signature.op(*op).arity, size, "table '" + name + "'",
                        [&] (const Json & v) {
                            if (! v.is_number_integer() || v.get<std::int64_t>() < 0)
                                throw Error{ ErrorCode::EntryOutOfRange, "table '" + name + "' has a non-element entry" };
                            return element(v, "table entry");
                        },
                        entries);
            }
            catch (const Error & e) {
                if (e.code() == ErrorCode::FileFormat)
                    throw Error{ ErrorCode::ArityMismatch, e.what() };
                throw;
            }
            flat[name] = std::move(entries);
        }
        return make_algebra(signature, size, flat);
    }

    auto algebra_to_json(const FiniteAlgebra & algebra) -> Json
    {
        Json out;
        out["signature"] = signature_to_json(algebra.signature());
        out["size"] = algebra.size();
        Json tables = Json::object();
        for (size_t op = 0 ; op < algebra.signature().size() ; ++op)
            tables[algebra.signature().op(op).name] = nested_elements(algebra.table(op),
                    algebra.signature().op(op).arity, algebra.size());
        out["tables"] = tables;
        return out;
    }

    auto fn_table_from_json(const Json & value, size_t cod_size, const string & what) -> FnTable
    {
        if (! value.is_array() || value.empty())
            format_error(what + " must be a non-empty integer array");
        vector<Element> values;
        for (auto & v : value)
            values.push_back(element(v, what + " entry"));
        return FnTable{ cod_size, std::move(values) };
    }

    auto witness_from_json(const Json & value, size_t kernel_size) -> Witness
    {
        require_object(value, "witness", { "n", "q" }, { "n", "q" });
        auto n = element(value["n"], "witness n");
        if (! value["q"].is_array() || value["q"].size() != n)
            format_error("witness q must list n tables");
        Witness w;
        for (auto & q : value["q"])
            w.q.push_back(fn_table_from_json(q, kernel_size, "witness q"));
        return w;
    }

    auto witness_to_json(const Witness & w) -> Json
    {
        Json out;
        out["n"] = w.n();
        Json q = Json::array();
        for (auto & qi : w.q)
            q.push_back(qi.values());
        out["q"] = q;
        return out;
    }

    auto equations_from_json(const Json & value, const Signature & signature) -> vector<Equation>
    {
        if (! value.is_array())
            format_error("axioms must be an array");
        vector<Equation> out;
        for (auto & eq : value) {
            require_object(eq, "axiom", { "vars", "lhs", "rhs" }, { "vars", "lhs", "rhs" });
            if (! eq["lhs"].is_string() || ! eq["rhs"].is_string())
                format_error("axiom sides must be strings");
            out.push_back(parse_equation(string_list(eq["vars"], "axiom vars"), eq["lhs"].get<string>(),
                        eq["rhs"].get<string>(), signature));
        }
        return out;
    }

    auto equations_to_json(const vector<Equation> & equations) -> Json
    {
        Json out = Json::array();
        for (auto & eq : equations) {
            Json e;
            e["vars"] = eq.vars;
            e["lhs"] = to_sexpr(eq.lhs);
            e["rhs"] = to_sexpr(eq.rhs);
            out.push_back(e);
        }
        return out;
    }

    auto extension_from_json(const Json & raw, const fs::path & base_dir) -> ExtensionDocument
    {
        auto [value, dir] = resolve(raw, base_dir, "extension");
        require_object(value, "extension", { "description", "X", "A", "B", "k", "p", "s", "witness", "axioms" },
                { "X", "A", "B", "k", "p", "s" });
        auto X = algebra_from_json(value["X"], dir);
        auto A = algebra_from_json(value["A"], dir);
        auto B = algebra_from_json(value["B"], dir);
        auto k = fn_table_from_json(value["k"], A.size(), "k");
        auto p = fn_table_from_json(value["p"], B.size(), "p");
        auto s = fn_table_from_json(value["s"], A.size(), "s");

        ExtensionDocument doc{ SplitExtension{ X, A, B, k, p, s }, std::nullopt, {} };
        if (value.contains("witness"))
            doc.witness = witness_from_json(value["witness"], X.size());
        if (value.contains("axioms"))
            doc.axioms = equations_from_json(value["axioms"], A.signature());
        return doc;
    }

    auto extension_to_json(const SplitExtension & e, const Witness * w, const vector<Equation> & axioms) -> Json
    {
        Json out;
        out["X"] = algebra_to_json(e.kernel);
        out["A"] = algebra_to_json(e.middle);
        out["B"] = algebra_to_json(e.base);
        out["k"] = e.inclusion.values();
        out["p"] = e.projection.values();
        out["s"] = e.section.values();
        if (w)
            out["witness"] = witness_to_json(*w);
        if (! axioms.empty())
            out["axioms"] = equations_to_json(axioms);
        return out;
    }

    auto hom_from_json(const Json & raw, const fs::path & base_dir, size_t cod_size) -> HomDocument
    {
        auto [value, dir] = resolve(raw, base_dir, "homomorphism");
        require_object(value, "homomorphism", { "description", "B_prime", "f" }, { "B_prime", "f" });
        auto domain = algebra_from_json(value["B_prime"], dir);
        auto f = fn_table_from_json(value["f"], cod_size, "f");
        return HomDocument{ std::move(domain), std::move(f) };
    }

    auto morphism_from_json(const Json & raw, const fs::path & base_dir) -> ExtensionMorphism
    {
        auto [value, dir] = resolve(raw, base_dir, "morphism");
        require_object(value, "morphism", { "description", "source", "target", "f", "g", "h" },
                { "source", "target", "f", "g", "h" });
        auto source = extension_from_json(value["source"], dir).extension;
        auto target = extension_from_json(value["target"], dir).extension;
        auto f = fn_table_from_json(value["f"], target.kernel.size(), "f");
        auto g = fn_table_from_json(value["g"], target.middle.size(), "g");
        auto h = fn_table_from_json(value["h"], target.base.size(), "h");
        return ExtensionMorphism{ std::move(source), std::move(target), std::move(f), std::move(g), std::move(h) };
    }

    auto law_report_to_json(const LawReport & report) -> Json
    {
        Json out = Json::array();
        for (auto & r : report.entries) {
            Json e;
            e["law"] = r.law;
            e["passed"] = r.passed;
            e["detail"] = r.detail;
            out.push_back(e);
        }
        return out;
    }

    namespace
    {
        auto xn_json(const TupleCoder & coder, size_t code) -> Json
        {
            return coder.decode(code);
        }
    }

    auto canonical_to_json(const CanonicalExtension & c, const vector<Equation> & axioms, const LawReport & verification)
        -> Json
    {
        auto coder = c.coder();
        auto kernel_coder = c.kernel_coder();
        auto & sig = c.source.middle.signature();

        Json out;
        out["format"] = "wsx-canonical";
        out["version"] = 1;
        out["X"] = algebra_to_json(c.source.kernel);
        out["B"] = algebra_to_json(c.source.base);
        out["theta"] = theta_to_json(c.theta);
        out["n"] = c.n();
        out["axioms"] = equations_to_json(axioms);

        Json gamma = Json::object();
        for (size_t op = 0 ; op < sig.size() ; ++op) {
            size_t pos = 0;
            gamma[sig.op(op).name] = nest<size_t>(c.gamma[op], pos, sig.op(op).arity, coder.count(),
                    [&] (const size_t & code) { return xn_json(kernel_coder, code); });
        }
        out["gamma"] = gamma;

        Json gamma_id = Json::array();
        for (auto code : c.gamma_id)
            gamma_id.push_back(xn_json(kernel_coder, code));
        out["gamma_id"] = gamma_id;

        Json section = Json::array();
        for (Element b = 0 ; b < c.source.base.size() ; ++b)
            section.push_back(xn_json(kernel_coder, c.y[c.iota_base(b)] / c.source.base.size()));
        out["section"] = section;

        Json y = Json::array();
        for (auto code : c.y)
            y.push_back(coder.decode(code));
        out["Y"] = y;

        Json y_ops = Json::object();
        for (size_t op = 0 ; op < sig.size() ; ++op)
            y_ops[sig.op(op).name] = nested_elements(c.y_algebra.table(op), sig.op(op).arity, c.y.size());
        out["Y_ops"] = y_ops;
        out["k_prime"] = c.k_prime.values();
        out["pi_B"] = c.pi_base.values();
        out["iota_B"] = c.iota_base.values();
        out["psi"] = c.psi.values();
        out["verification"] = law_report_to_json(verification);
        return out;
    }

    auto gamma_from_json(const Json & raw, const fs::path & base_dir) -> GammaData
    {
        auto [value, dir] = resolve(raw, base_dir, "gamma data");
        require_object(value, "gamma data",
                { "format", "version", "description", "X", "B", "theta", "n", "axioms", "gamma", "gamma_id", "section",
                  "Y", "Y_ops", "k_prime", "pi_B", "iota_B", "psi", "verification" },
                { "X", "B", "theta", "gamma" });
        auto X = algebra_from_json(value["X"], dir);
        auto B = algebra_from_json(value["B"], dir);
        if (X.signature() != B.signature())
            throw Error{ ErrorCode::SignatureMismatch, "X and B have different signatures" };
        auto theta = theta_from_json(value["theta"]).bind(B.signature());
        auto n = theta.n();
        if (value.contains("n") && element(value["n"], "n") != n)
            format_error("n disagrees with theta's arity");

        auto coder = TupleCoder::ambient(X.size(), n, B.size());
        auto kernel_coder = TupleCoder::power(X.size(), n);
        auto xn_leaf = [&] (const Json & v) -> size_t {
            if (! v.is_array() || v.size() != n)
                format_error("gamma values must be arrays of length n = " + to_string(n));
            vector<Element> tuple;
            for (auto & x : v) {
                auto e = element(x, "gamma component");
                if (e >= X.size())
                    throw Error{ ErrorCode::EntryOutOfRange, "gamma component " + to_string(e) + " outside X" };
                tuple.push_back(e);
            }
            return kernel_coder.encode(tuple);
        };

        auto & sig = B.signature();
        auto & gamma_json = value["gamma"];
        if (! gamma_json.is_object())
            format_error("gamma must be an object keyed by operation name");
        for (auto & [name, _] : gamma_json.items())
            if (! sig.find(name))
                throw Error{ ErrorCode::UnknownSymbol, "gamma table for unknown operation '" + name + "'" };
        GammaTables gamma;
        for (auto & op : sig.ops()) {
            if (! gamma_json.contains(op.name))
                throw Error{ ErrorCode::MissingTable, "no gamma table for '" + op.name + "'" };
            vector<size_t> table;
            flatten<size_t>(gamma_json[op.name], op.arity, coder.count(), "gamma table '" + op.name + "'", xn_leaf, table);
            gamma.push_back(std::move(table));
        }

        vector<Equation> axioms;
        if (value.contains("axioms"))
            axioms = equations_from_json(value["axioms"], sig);

        vector<size_t> section(B.size(), kernel_coder.encode(vector<Element>(n, X.zero())));
        if (value.contains("section")) {
            auto & s = value["section"];
            if (! s.is_array() || s.size() != B.size())
                format_error("section must list one X^n tuple per element of B");
            for (size_t b = 0 ; b < B.size() ; ++b)
                section[b] = xn_leaf(s[b]);
        }

        std::optional<vector<size_t>> gamma_id;
        if (value.contains("gamma_id")) {
            auto & gi = value["gamma_id"];
            if (! gi.is_array() || gi.size() != coder.count())
                format_error("gamma_id must list one X^n tuple per element of X^n x B");
            gamma_id.emplace();
            for (auto & v : gi)
                gamma_id->push_back(xn_leaf(v));
        }

        return GammaData{ std::move(X), std::move(B), std::move(theta), std::move(gamma), std::move(axioms),
            std::move(section), std::move(gamma_id) };
    }
}
