#include "toral/io.hpp"

#include <fstream>
#include <sstream>

namespace toral {

namespace {

const json& member(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError((path.empty() ? key : path + "." + key) + ": missing field");
    return *it;
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const json& array_field(const json& j, const std::string& key, const std::string& path)
{
    const json& a = member(j, key, path);
    if (!a.is_array())
        throw ParseError(join(path, key) + ": expected an array");
    return a;
}

int small_int(const json& j, const std::string& path)
{
    const Integer v = integer_field(j, path);
    if (!v.fits_sint_p())
        throw ParseError(path + ": value out of range");
    return static_cast<int>(v.get_si());
}

} // namespace

json parse_document(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

json read_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Integer integer_field(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                      : Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    throw ParseError(path + ": expected an integer, got " + std::string(j.type_name()) +
                     (j.is_number_float() ? " (floats are not accepted)" : ""));
}

Rational rational_field(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(integer_field(j, path));
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    throw ParseError(path + ": expected a rational \"n/d\", got " + std::string(j.type_name()));
}

// ------------------------------------------------------------------ actions

TorusActionS3 action_from_json(const json& j)
{
    const json& rows = array_field(j, "rows", "");
    std::vector<ExponentRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = index("rows", i);
        out.push_back({integer_field(member(rows[i], "a", p), p + ".a"),
                       integer_field(member(rows[i], "b", p), p + ".b"),
                       integer_field(member(rows[i], "k", p), p + ".k"),
                       integer_field(member(rows[i], "l", p), p + ".l")});
    }
    if (j.contains("n_factors")) {
        const Integer n = integer_field(j["n_factors"], "n_factors");
        if (n != static_cast<long>(out.size()))
            throw ParseError("n_factors: says " + n.get_str() + " but rows has " + std::to_string(out.size()) +
                             " entries");
    }
    if (out.empty())
        throw ParseError("rows: at least one factor is required");
    return TorusActionS3(std::move(out));
}

json to_json(const TorusActionS3& act)
{
    json rows = json::array();
    for (const auto& r : act.rows())
        rows.push_back({{"a", r.a.get_str()}, {"b", r.b.get_str()}, {"k", r.k.get_str()}, {"l", r.l.get_str()}});
    return {{"n_factors", act.factors()}, {"rows", rows}};
}

CircleActionSpheres circle_from_json(const json& j)
{
    const json& factors = array_field(j, "factors", "");
    std::vector<SphereFactor> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::string p = index("factors", i);
        SphereFactor f;
        f.sphere_dim = small_int(member(factors[i], "sphere_dim", p), p + ".sphere_dim");
        const json& w = array_field(factors[i], "weights", p);
        for (std::size_t k = 0; k < w.size(); ++k)
            f.weights.push_back(integer_field(w[k], index(p + ".weights", k)));
        out.push_back(std::move(f));
    }
    try {
        return CircleActionSpheres(std::move(out));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("factors: ") + e.what());
    }
}

json to_json(const CircleActionSpheres& act)
{
    json factors = json::array();
    for (const auto& f : act.factors()) {
        json w = json::array();
        for (const auto& x : f.weights)
            w.push_back(x.get_str());
        factors.push_back({{"sphere_dim", f.sphere_dim}, {"weights", w}});
    }
    return {{"factors", factors}};
}

// ------------------------------------------------------------------- models

FreeCDGA model_from_json(const json& j)
{
    ModelKind kind = ModelKind::minimal;
    if (j.contains("kind")) {
        const json& k = j["kind"];
        if (k == "minimal")
            kind = ModelKind::minimal;
        else if (k == "relative")
            kind = ModelKind::relative;
        else
            throw ParseError("kind: expected \"minimal\" or \"relative\"");
    }

    const json& gens = array_field(j, "generators", "");
    std::vector<Generator> generators;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string p = index("generators", i);
        const json& name = member(gens[i], "name", p);
        if (!name.is_string())
            throw ParseError(p + ".name: expected a string");
        generators.push_back({name.get<std::string>(), small_int(member(gens[i], "degree", p), p + ".degree")});
    }
    FreeAlgebra algebra = [&] {
        try {
            return FreeAlgebra(std::move(generators));
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("generators: ") + e.what());
        }
    }();

    std::vector<Polynomial> d(algebra.size());
    if (j.contains("differential")) {
        const json& diff = j["differential"];
        if (!diff.is_object())
            throw ParseError("differential: expected an object keyed by generator name");
        for (const auto& [gname, terms] : diff.items()) {
            const std::string p = "differential." + gname;
            auto g = algebra.find(gname);
            if (!g)
                throw ParseError(p + ": unknown generator");
            if (!terms.is_array())
                throw ParseError(p + ": expected an array of terms");
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const std::string tp = index(p, t);
                const Rational c = rational_field(member(terms[t], "coeff", tp), tp + ".coeff");
                const json& mono = member(terms[t], "monomial", tp);
                if (!mono.is_object())
                    throw ParseError(tp + ".monomial: expected an object of exponents");
                std::vector<Monomial::Factor> factors;
                for (const auto& [vname, e] : mono.items()) {
                    auto v = algebra.find(vname);
                    if (!v)
                        throw ParseError(tp + ".monomial." + vname + ": unknown generator");
                    const int ex = small_int(e, tp + ".monomial." + vname);
                    if (ex < 0)
                        throw ParseError(tp + ".monomial." + vname + ": negative exponent");
                    factors.emplace_back(*v, static_cast<std::uint32_t>(ex));
                }
                // Koszul-ordered product so repeated odd generators vanish correctly
                Polynomial term = Polynomial::constant(c);
                for (const auto& [v, ex] : factors)
                    for (std::uint32_t r = 0; r < ex; ++r)
                        term = algebra.multiply(term, algebra.gen(v));
                d[*g] += term;
            }
        }
    }
    try {
        return FreeCDGA(std::move(algebra), std::move(d), kind);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("differential: ") + e.what());
    }
}

json to_json(const FreeCDGA& model)
{
    const auto& alg = model.algebra();
    json gens = json::array();
    for (const auto& g : alg.generators())
        gens.push_back({{"name", g.name}, {"degree", g.degree}});
    json diff = json::object();
    for (std::uint32_t i = 0; i < alg.size(); ++i) {
        const Polynomial& p = model.d(i);
        if (p.is_zero())
            continue;
        json terms = json::array();
        for (const auto& [m, c] : p.terms()) {
            json mono = json::object();
            for (const auto& [idx, e] : m.factors())
                mono[alg.generators()[idx].name] = e;
            terms.push_back({{"coeff", c.to_string()}, {"monomial", mono}});
        }
        diff[alg.generators()[i].name] = terms;
    }
    return {{"kind", model.kind() == ModelKind::minimal ? "minimal" : "relative"},
            {"generators", gens},
            {"differential", diff}};
}

// ------------------------------------------------------------------ records

json to_json(const BinaryQuadraticForm& f)
{
    return json::array({f.A.to_string(), f.B.to_string(), f.C.to_string()});
}

json to_json(const FreenessReport& r)
{
    json out = {{"free", r.free}};
    if (r.violating_selection) {
        out["violating_selection"] = *r.violating_selection;
        out["violating_gcd"] = r.violating_gcd.get_str();
    }
    if (!r.diagnostic.empty())
        out["diagnostic"] = r.diagnostic;
    return out;
}

json to_json(const NormalizedActionS3& n)
{
    const auto& u = n.witness().reparametrization;
    json perm = json::array();
    for (auto p : n.witness().permutation)
        perm.push_back(p + 1);
    return {{"action", to_json(n.action())},
            {"permutation", perm},
            {"reparametrization",
             json::array({json::array({u(0, 0).get_str(), u(0, 1).get_str()}),
                          json::array({u(1, 0).get_str(), u(1, 1).get_str()})})}};
}

json to_json(const ClassificationResult& r)
{
    json out = {{"kind", to_string(r.kind)}, {"trailing_s3", r.trailing_s3}, {"rank_d3", r.rank_d3}};
    if (r.epsilon)
        out["epsilon"] = *r.epsilon;
    json pencil = json::array();
    for (const auto& f : r.pencil)
        pencil.push_back(to_json(f));
    out["pencil"] = pencil;
    if (r.quotient_form) {
        out["quotient_form"] = to_json(*r.quotient_form);
        out["isotropy"] = to_string(isotropy_class(*r.quotient_form));
    }
    out["proof_path"] = r.proof_path;
    out["violations"] = r.violations;
    return out;
}

json to_json(const HomotopyProfile& p)
{
    json d = json::object();
    for (const auto& [j, v] : p.d)
        d[std::to_string(j)] = v;
    return {{"n", p.n}, {"d", d}};
}

json to_json(const SphereFactorization& f)
{
    return {{"spheres", f.spheres}, {"circle_rank", f.circle_rank}};
}

} // namespace toral
