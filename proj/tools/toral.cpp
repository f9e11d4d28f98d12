#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toral/harness.hpp"
#include "toral/io.hpp"
#include "toral/models.hpp"

using namespace toral;

namespace {

enum class Format
{
    json,
    table,
};

Format g_format = Format::json;

void emit(const json& record)
{
    if (g_format == Format::json) {
        std::cout << record.dump() << '\n';
        return;
    }
    for (const auto& [key, value] : record.items())
        std::cout << std::left << std::setw(22) << key << ' '
                  << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    std::cout << '\n';
}

int run_classify(const std::string& path)
{
    const auto act = action_from_json(read_document(path));
    json rec = {{"record", "classification"}};
    rec.update(to_json(classify_t2_quotient(act)));
    emit(rec);
    return 0;
}

int run_free_check(const std::string& path)
{
    const auto act = action_from_json(read_document(path));
    json rec = {{"record", "free_check"}, {"effective", is_effective(act)}};
    rec.update(to_json(check_freeness(act)));
    emit(rec);
    return 0;
}

int run_normalize(const std::string& path)
{
    const auto act = action_from_json(read_document(path));
    json rec = {{"record", "normalized"}};
    rec.update(to_json(normalize(act)));
    emit(rec);
    return 0;
}

int run_betti(const std::string& path, int max_deg)
{
    const auto model = model_from_json(read_document(path));
    json betti = json::array();
    for (auto b : betti_numbers(model, max_deg))
        betti.push_back(b);
    emit({{"record", "betti"}, {"max_degree", max_deg}, {"betti", betti}});
    return 0;
}

int run_profiles(int n, int k, const std::string& mode_name)
{
    const ProfileMode mode = mode_name == "almost_free" ? ProfileMode::almost_free : ProfileMode::effective_max;
    const auto profiles = enumerate_profiles(n, k, mode);
    for (const auto& p : profiles) {
        json rec = {{"record", "profile"}, {"mode", mode_name}, {"k", k}};
        rec.update(to_json(p));
        json models = json::array();
        for (const auto& f : profile_to_models(p))
            models.push_back(to_json(f));
        rec["models"] = models;
        emit(rec);
    }
    emit({{"record", "profile_summary"}, {"n", n}, {"k", k}, {"mode", mode_name}, {"count", profiles.size()}});
    return 0;
}

int run_circle_classify(const std::string& path)
{
    const auto act = circle_from_json(read_document(path));
    if (!is_free_circle(act))
        throw FreenessViolation("circle action is not free: " + act.to_string());
    const auto data = circle_euler_data(act);
    if (data.alpha.size() != 1)
        throw PreconditionError("circle-classify: expected exactly one S^5 factor, got " +
                                std::to_string(data.alpha.size()));
    const Kind kind = classify_s1_quotient(data.lambda, data.alpha[0]);
    json lambda = json::array();
    for (const auto& l : data.lambda)
        lambda.push_back(l.get_str());
    emit({{"record", "circle_classification"},
          {"kind", to_string(kind)},
          {"lambda", lambda},
          {"alpha", data.alpha[0].get_str()},
          {"trailing_s3", kind == Kind::S2xS5_PRODUCT ? data.lambda.size() - 1 : data.lambda.size()}});
    return 0;
}

int run_square_class(const std::string& a, const std::string& b)
{
    const Rational alpha = Rational::parse(a);
    const Rational beta = Rational::parse(b);
    emit({{"record", "square_class"},
          {"alpha", alpha.to_string()},
          {"beta", beta.to_string()},
          {"isomorphic", square_class_isomorphic(alpha, beta)}});
    return 0;
}

int run_verify_t2(std::size_t factors, int bound, std::optional<std::uint64_t> count, std::optional<std::uint64_t> seed,
                  unsigned jobs)
{
    GridSpec g;
    g.n_factors = factors;
    g.bound = bound;
    if (count || seed) {
        if (!count || !seed)
            throw PreconditionError("verify-t2: --random and --seed must be given together");
        g.random = RandomSample{*count, *seed};
    }
    g.jobs = resolve_jobs(jobs);
    const auto report = run_t2_campaign(g);
    emit(to_json(report));
    return report.totals.violations == 0 ? 0 : 2;
}

int run_verify_profiles(int n_max)
{
    const auto report = run_profile_campaign(n_max);
    emit(to_json(report));
    return report.mismatches.empty() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rational homotopy invariants of torus actions on products of spheres"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

    std::string file, mode = "almost_free", a, b;
    int max_deg = 0, n = 0, k = 0, bound = 1, n_max = 30;
    std::size_t factors = 3;
    std::optional<std::uint64_t> count, seed;
    unsigned jobs = 1;

    auto* classify = app.add_subcommand("classify", "Classify the T^2 quotient of an action file");
    classify->add_option("action-file", file)->required();
    auto* free_check = app.add_subcommand("free-check", "Effectiveness and freeness of an action file");
    free_check->add_option("action-file", file)->required();
    auto* norm = app.add_subcommand("normalize", "Normal form of an action file");
    norm->add_option("action-file", file)->required();
    auto* betti = app.add_subcommand("betti", "Betti numbers of a model file");
    betti->add_option("model-file", file)->required();
    betti->add_option("--max-deg", max_deg)->required();
    auto* profiles = app.add_subcommand("profiles", "Admissible homotopy profiles");
    profiles->add_option("--n", n)->required();
    profiles->add_option("--k", k)->required();
    profiles->add_option("--mode", mode)->check(CLI::IsMember({"almost_free", "effective_max"}));
    auto* circle = app.add_subcommand("circle-classify", "Classify a circle quotient of S^5 x S^3 x ... x S^3");
    circle->add_option("circle-file", file)->required();
    auto* square = app.add_subcommand("square-class", "Whether B/A is a rational square");
    square->add_option("A", a)->required();
    square->add_option("B", b)->required();
    auto* verify_t2 = app.add_subcommand("verify-t2", "Classification campaign over an integer grid");
    verify_t2->add_option("--factors", factors)->required();
    verify_t2->add_option("--bound", bound)->required();
    verify_t2->add_option("--random", count, "Number of random samples");
    verify_t2->add_option("--seed", seed, "64-bit seed for --random");
    verify_t2->add_option("--jobs", jobs, "Worker threads (RT_JOBS overrides)");
    auto* verify_profiles = app.add_subcommand("verify-profiles", "Check profile enumeration against closed forms");
    verify_profiles->add_option("--n-max", n_max)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    g_format = format == "table" ? Format::table : Format::json;

    try {
        if (*classify)
            return run_classify(file);
        if (*free_check)
            return run_free_check(file);
        if (*norm)
            return run_normalize(file);
        if (*betti)
            return run_betti(file, max_deg);
        if (*profiles)
            return run_profiles(n, k, mode);
        if (*circle)
            return run_circle_classify(file);
        if (*square)
            return run_square_class(a, b);
        if (*verify_t2)
            return run_verify_t2(factors, bound, count, seed, jobs);
        if (*verify_profiles)
            return run_verify_profiles(n_max);
    } catch (const ClassificationViolation& e) {
        std::cerr << "ClassificationViolation: " << e.what() << '\n';
        return 2;
    } catch (const FreenessViolation& e) {
        std::cerr << "FreenessViolation: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "PreconditionError: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
