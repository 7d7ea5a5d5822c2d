#pragma once

// Command-line front end: verify and cohomology runs reported as JSON.

#include "hopfcalc/registry.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace hopfcalc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitUsage = 2;

inline Json params_json(const ExampleSpec& ex, const Params& p) {
    Json out = Json::object();
    for (const auto& ps : ex.params) {
        const std::string& v = p.at(ps.name);
        if (ps.integer)
            out[ps.name] = int_param(p, ps.name);
        else
            out[ps.name] = v;
    }
    return out;
}

inline Json report_json(const std::vector<CheckReport>& reports) {
    Json suites = Json::array();
    for (const auto& r : reports) {
        Json checks = Json::array();
        for (const auto& c : r.checks) {
            Json e;
            e["name"] = c.name;
            e["status"] = status_name(c.status);
            e["witness"] = c.witness.empty() ? Json(nullptr) : Json(c.witness);
            e["detail"] = c.detail;
            checks.push_back(std::move(e));
        }
        Json s;
        s["suite"] = r.suite;
        s["checks"] = std::move(checks);
        suites.push_back(std::move(s));
    }
    return suites;
}

inline Json summary_json(const std::vector<CheckReport>& reports) {
    std::size_t total = 0, failed = 0, windowed = 0, sampled = 0;
    for (const auto& r : reports)
        for (const auto& c : r.checks) {
            ++total;
            failed += c.status == Status::fail;
            windowed += c.status == Status::window_verified;
            sampled += c.status == Status::sampled;
        }
    Json s;
    s["checks"] = total;
    s["failed"] = failed;
    s["window_verified"] = windowed;
    s["sampled"] = sampled;
    s["ok"] = failed == 0;
    return s;
}

inline Json error_json(const std::string& command, const std::string& kind, const std::string& message) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

inline Json list_examples_json() {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "list-examples";
    Json exs = Json::array();
    for (const auto& ex : registry()) {
        Json e;
        e["name"] = ex.name;
        e["summary"] = ex.summary;
        Json ps = Json::array();
        for (const auto& p : ex.params) {
            Json pj;
            pj["name"] = p.name;
            pj["type"] = !p.choices.empty() ? "choice" : (p.integer ? "integer" : "path");
            pj["default"] = p.def;
            if (!p.choices.empty()) pj["choices"] = p.choices;
            pj["help"] = p.help;
            ps.push_back(std::move(pj));
        }
        e["params"] = std::move(ps);
        e["suites"] = ex.suites;
        e["cohomology"] = static_cast<bool>(ex.cohomology);
        exs.push_back(std::move(e));
    }
    j["examples"] = std::move(exs);
    return j;
}

inline std::set<std::string> all_param_names() {
    std::set<std::string> names;
    for (const auto& ex : registry())
        for (const auto& p : ex.params) names.insert(p.name);
    return names;
}

/// Runs one command line; JSON goes to out, the human summary to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of crossed product calculi and quantum principal bundles", "hopf-calc"};
    app.require_subcommand(1);
    auto* list = app.add_subcommand("list-examples", "list registered examples and their parameters");
    auto* verify = app.add_subcommand("verify", "run the verification suites of an example");
    auto* cohom = app.add_subcommand("cohomology", "de Rham cohomology dimensions of an example");

    std::string example;
    RunOptions opts;
    int maxDegree = 2;
    std::map<std::string, std::string> given;
    std::map<std::string, CLI::Option*> verifyOpts, cohomOpts;
    for (auto* sub : {verify, cohom}) {
        sub->add_option("example", example, "registered example name")->required();
        auto& table = sub == verify ? verifyOpts : cohomOpts;
        for (const auto& name : all_param_names()) table[name] = sub->add_option("--" + name, given[name], "example parameter");
        sub->add_option("--window", opts.window, "exponent window for infinite bases");
    }
    verify->add_option("--suite", opts.suite, "run a single suite");
    verify->add_option("--seed", opts.seed, "seed for sampled checks");
    cohom->add_option("--max-degree", maxDegree, "highest degree");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    std::string command = "usage";
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        out << error_json(command, "help", "help requested").dump(2) << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "hopf-calc: " << e.what() << "\n" << app.help();
        out << error_json(command, "usage", e.what()).dump(2) << "\n";
        return kExitUsage;
    }

    if (list->parsed()) {
        out << list_examples_json().dump(2) << "\n";
        for (const auto& ex : registry()) err << ex.name << ": " << ex.summary << "\n";
        return 0;
    }

    command = verify->parsed() ? "verify" : "cohomology";
    const auto& table = verify->parsed() ? verifyOpts : cohomOpts;
    Params supplied;
    for (const auto& [name, opt] : table)
        if (opt->count() > 0) supplied[name] = given[name];

    const ExampleSpec* ex = find_example(example);
    try {
        if (!ex) throw UsageError("unknown example '" + example + "'");
        if (opts.window < 1) throw UsageError("--window must be positive");
        Params p = resolve_params(*ex, supplied);
        Json j;
        j["schema"] = kSchemaVersion;
        j["command"] = command;
        j["example"] = ex->name;
        j["params"] = params_json(*ex, p);
        j["window"] = opts.window;
        if (command == "verify") {
            j["seed"] = opts.seed;
            auto reports = verify_example(*ex, supplied, opts);
            j["suites"] = report_json(reports);
            Json s = summary_json(reports);
            j["summary"] = s;
            out << j.dump(2) << "\n";
            err << "verify " << ex->name << ": " << s["checks"].get<std::size_t>() << " checks, "
                << s["failed"].get<std::size_t>() << " failed, " << s["window_verified"].get<std::size_t>()
                << " window-verified, " << s["sampled"].get<std::size_t>() << " sampled\n";
            for (const auto& r : reports)
                for (const auto& c : r.checks)
                    if (c.status == Status::fail)
                        err << "  FAIL " << r.suite << "/" << c.name << (c.witness.empty() ? "" : " at " + c.witness)
                            << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
            return s["ok"].get<bool>() ? 0 : 1;
        }
        if (!ex->cohomology) throw UsageError("example '" + ex->name + "' has no cohomology runner");
        if (maxDegree < 0) throw UsageError("--max-degree must be non-negative");
        j["max_degree"] = maxDegree;
        Cohomology c;
        try {
            c = ex->cohomology(p, maxDegree, opts.window);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            out << error_json(command, "structure", e.what()).dump(2) << "\n";
            err << "cohomology " << ex->name << ": " << e.what() << "\n";
            return 1;
        }
        j["windowed"] = c.windowed;
        j["dimensions"] = c.dims;
        j["form_dimensions"] = c.form_dims;
        out << j.dump(2) << "\n";
        err << "cohomology " << ex->name << ":";
        for (std::size_t k = 0; k < c.dims.size(); ++k) err << " H" << k << "=" << c.dims[k];
        err << (c.windowed ? " (window " + std::to_string(opts.window) + ")" : "") << "\n";
        return 0;
    } catch (const UsageError& e) {
        out << error_json(command, "usage", e.what()).dump(2) << "\n";
        err << "hopf-calc: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace hopfcalc
