// Config-driven command line front end: one task per invocation, JSON in,
// JSON report out. Exit codes: 0 pass, 2 precondition/contraction failure,
// 3 numerical failure or failed verdict, 4 I/O or schema error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "gradedalg/calculus.hpp"
#include "gradedalg/factorization.hpp"
#include "gradedalg/localization.hpp"
#include "gradedalg/oracles.hpp"
#include "gradedalg/patch.hpp"
#include "gradedalg/serialize.hpp"
#include "gradedalg/validate.hpp"

namespace ga = gradedalg;
using ga::Json;

namespace {

class schema_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const Json& requireField(const Json& j, const std::string& key, const char* context) {
    if (!j.contains(key))
        throw schema_error(std::string(context) + ": missing required field '" + key + "'");
    return j[key];
}

ga::Rational gradeField(const Json& grades, const std::string& key) {
    return ga::Rational::parse(requireField(grades, key, "grades").get<std::string>());
}

std::string isoTimestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&tt));
    return buf;
}

struct TaskContext {
    Json config;
    std::string configPath;
    std::optional<std::uint64_t> seedOverride;
    std::optional<double> tolOverride;
    std::string outPath;

    double tol(double fallback) const {
        if (tolOverride) return *tolOverride;
        if (config.contains("tol")) return config["tol"].get<double>();
        return fallback;
    }
    std::uint64_t seed() const {
        if (seedOverride) return *seedOverride;
        if (config.contains("seed")) return config["seed"].get<std::uint64_t>();
        return 0;
    }
    std::string elementPath() const {
        const Json& inputs = requireField(config, "inputs", "config");
        return requireField(inputs, "element", "inputs").get<std::string>();
    }
};

Json runValidate(const TaskContext& ctx, Json& inputsOut) {
    const ga::InstanceSpec spec =
        ga::instanceFromJson(requireField(ctx.config, "instance", "config"));
    const Json& grades = requireField(ctx.config, "grades", "config");
    const int samples =
        ctx.config.contains("samples") ? ctx.config["samples"].get<int>() : 100;
    const auto rep = ga::validateStrongInequality(spec, gradeField(grades, "alpha"),
                                                  gradeField(grades, "beta"), samples,
                                                  ctx.seed());
    (void)inputsOut;
    Json details = ga::validationReportToJson(rep);
    details["verdict_pass"] = rep.pass;
    return details;
}

Json runInvert(const TaskContext& ctx, Json& inputsOut) {
    const std::string path = ctx.elementPath();
    inputsOut["element"] = ga::fileHash(path);
    const ga::AlgebraElement a = ga::elementFromJson(ga::loadJsonFile(path));
    const Json& grades = requireField(ctx.config, "grades", "config");
    const auto res = ga::neumannInverse(a, gradeField(grades, "alpha"),
                                        gradeField(grades, "beta"), ctx.tol(1e-10));
    Json details;
    details["inverse"] = ga::elementToJson(res.inverse);
    details["norm_bound"] = ga::certificateToJson(res.normBound);
    details["deviation_bound"] = ga::certificateToJson(res.deviationBound);
    details["residual_left"] = res.residualLeft;
    details["residual_right"] = res.residualRight;
    details["terms"] = res.terms;
    details["verdict_pass"] = true;
    if (ctx.config.contains("element_output"))
        ga::writeJsonFile(ctx.config["element_output"].get<std::string>(),
                          ga::elementToJson(res.inverse));
    return details;
}

Json runScan(const TaskContext& ctx, Json& inputsOut) {
    const std::string path = ctx.elementPath();
    inputsOut["element"] = ga::fileHash(path);
    const ga::WienerElement a = ga::wienerFromJson(ga::loadJsonFile(path));
    const int grid = ctx.config.contains("grid_size") ? ctx.config["grid_size"].get<int>()
                                                      : 4 * (2 * a.halfWidth() + 1);
    const auto rep = ga::invertibilityScan(a, grid);
    Json details = ga::scanReportToJson(rep);
    details["verdict_pass"] = rep.allInvertible;
    return details;
}

Json runWienerInvert(const TaskContext& ctx, Json& inputsOut) {
    const std::string path = ctx.elementPath();
    inputsOut["element"] = ga::fileHash(path);
    const ga::WienerElement a = ga::wienerFromJson(ga::loadJsonFile(path));
    ga::WienerInvertOptions opts;
    opts.tol = ctx.tol(1e-6);
    if (ctx.config.contains("output_half_width"))
        opts.patch.outputHalfWidth = ctx.config["output_half_width"].get<int>();
    const auto res = ga::wienerLeftInverse(a, opts);
    Json details;
    details["inverse"] = ga::wienerToJson(res.inverse);
    details["centers"] = res.centers;
    details["window_residual"] = res.patch.windowResidual;
    details["residual_window"] = res.patch.window;
    details["pointwise_residual"] = res.patch.pointwiseResidual;
    details["partition_error"] = res.patch.partitionError;
    details["truncation_budget"] = res.patch.truncationBudget;
    details["uniform_tiling"] = res.patch.uniformTiling;
    Json certs = Json::array();
    for (const auto& c : res.certificates) {
        Json cj;
        cj["t0"] = c.t0;
        cj["eps"] = c.eps;
        cj["alpha"] = ga::gradeKey(c.alpha);
        cj["beta"] = ga::gradeKey(c.beta);
        cj["gamma"] = ga::gradeKey(c.gamma);
        cj["contraction"] = c.contraction;
        cj["off_diagonal_sum"] = c.offDiagonalSum;
        cj["b0_left_inverse_norm"] = c.b0LeftInvNorm;
        cj["halvings"] = c.halvings;
        certs.push_back(cj);
    }
    details["certificates"] = certs;
    details["verdict_pass"] = true;
    if (ctx.config.contains("element_output"))
        ga::writeJsonFile(ctx.config["element_output"].get<std::string>(),
                          ga::wienerToJson(res.inverse));
    return details;
}

Json runFactorize(const TaskContext& ctx, Json& inputsOut) {
    const std::string path = ctx.elementPath();
    inputsOut["element"] = ga::fileHash(path);
    const ga::WienerElement a = ga::wienerFromJson(ga::loadJsonFile(path));
    const Json& grades = requireField(ctx.config, "grades", "config");
    const double tol = ctx.tol(1e-10);
    const auto res = ga::solveCanonicalFactorization(a, gradeField(grades, "alpha"),
                                                     gradeField(grades, "beta"), tol);
    Json details = ga::factorizationResultToJson(res);
    details["verdict_pass"] = res.residualMinusPlus <= std::max(tol * 100.0, 1e-8) &&
                              res.membership.pass;
    if (ctx.config.contains("element_output")) {
        Json factors;
        factors["a_minus"] = ga::wienerToJson(res.aMinus);
        factors["a_plus"] = ga::wienerToJson(res.aPlus);
        factors["a_minus_inv"] = ga::wienerToJson(res.aMinusInv);
        factors["a_plus_inv"] = ga::wienerToJson(res.aPlusInv);
        ga::writeJsonFile(ctx.config["element_output"].get<std::string>(), factors);
    }
    return details;
}

Json runLocalize(const TaskContext& ctx, Json& inputsOut) {
    const std::string path = ctx.elementPath();
    inputsOut["element"] = ga::fileHash(path);
    const ga::WienerElement a = ga::wienerFromJson(ga::loadJsonFile(path));
    const double t0 = requireField(ctx.config, "t0", "config").get<double>();
    ga::LocalizationOptions opts;
    if (ctx.config.contains("grades") && ctx.config["grades"].contains("alpha")) {
        opts.alpha = gradeField(ctx.config["grades"], "alpha");
        opts.alphaSet = true;
    }
    const ga::AlgebraElement pinv =
        ga::pointwiseLeftInverse(a.evaluate(t0), opts.alphaSet ? opts.alpha
                                                               : a.spec().grades().front());
    auto [b, cert] = ga::chooseLocalization(a, t0, pinv, opts);
    Json details;
    details["eps"] = cert.eps;
    details["contraction"] = cert.contraction;
    details["alpha"] = ga::gradeKey(cert.alpha);
    details["beta"] = ga::gradeKey(cert.beta);
    details["gamma"] = ga::gradeKey(cert.gamma);
    details["off_diagonal_sum"] = cert.offDiagonalSum;
    details["b0_left_inverse_norm"] = cert.b0LeftInvNorm;
    details["halvings"] = cert.halvings;
    details["decay_report"] = cert.decayReport;
    details["localized_half_width"] = b.halfWidth();
    details["verdict_pass"] = true;
    if (ctx.config.contains("element_output"))
        ga::writeJsonFile(ctx.config["element_output"].get<std::string>(),
                          ga::wienerToJson(b));
    return details;
}

int runTask(const TaskContext& ctx) {
    const std::string task = requireField(ctx.config, "task", "config").get<std::string>();
    Json report;
    report["task"] = task;
    report["timestamp"] = isoTimestamp();
    Json inputs;
    inputs["config"] = ga::fileHash(ctx.configPath);

    Json details;
    if (task == "validate")
        details = runValidate(ctx, inputs);
    else if (task == "invert")
        details = runInvert(ctx, inputs);
    else if (task == "scan")
        details = runScan(ctx, inputs);
    else if (task == "wiener-invert")
        details = runWienerInvert(ctx, inputs);
    else if (task == "factorize")
        details = runFactorize(ctx, inputs);
    else if (task == "localize")
        details = runLocalize(ctx, inputs);
    else
        throw schema_error("unknown task '" + task + "'");

    const bool pass = details.value("verdict_pass", false);
    details.erase("verdict_pass");
    report["inputs"] = inputs;
    report["verdict"] = pass ? "pass" : "fail";
    report["details"] = details;

    std::string out = ctx.outPath;
    if (out.empty() && ctx.config.contains("output"))
        out = ctx.config["output"].get<std::string>();
    if (!out.empty())
        ga::writeJsonFile(out, report);
    else
        std::cout << report.dump(2) << "\n";
    return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded-algebra toolkit: validation, certified inversion, Wiener-algebra "
                 "inversion and canonical factorization"};
    app.require_subcommand(1);

    std::string configPath, outPath;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;

    const std::vector<std::string> tasks = {"validate", "invert",    "wiener-invert",
                                            "scan",     "factorize", "localize"};
    for (const auto& t : tasks) {
        auto* sub = app.add_subcommand(t);
        sub->add_option("--config", configPath, "config JSON path")->required();
        sub->add_option("--out", outPath, "report output path (overrides config)");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--tol", tol, "tolerance override");
    }

    CLI11_PARSE(app, argc, argv);

    TaskContext ctx;
    ctx.configPath = configPath;
    ctx.seedOverride = seed;
    ctx.tolOverride = tol;
    ctx.outPath = outPath;

    try {
        try {
            ctx.config = ga::loadJsonFile(configPath);
        } catch (const Json::exception& e) {
            throw schema_error(std::string("config parse error: ") + e.what());
        }
        const std::string subTask = app.get_subcommands().front()->get_name();
        if (!ctx.config.contains("task")) ctx.config["task"] = subTask;
        if (ctx.config["task"].get<std::string>() != subTask)
            throw schema_error("config task does not match the subcommand");
        return runTask(ctx);
    } catch (const schema_error& e) {
        std::cerr << Json{{"error_class", "schema"}, {"message", e.what()}}.dump() << "\n";
        return 4;
    } catch (const Json::exception& e) {
        std::cerr << Json{{"error_class", "schema"}, {"message", e.what()}}.dump() << "\n";
        return 4;
    } catch (const ga::precondition_error& e) {
        std::cerr << Json{{"error_class", "precondition"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const ga::numerical_error& e) {
        std::cerr << Json{{"error_class", "numerical"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error_class", "io"}, {"message", e.what()}}.dump() << "\n";
        return 4;
    }
}
