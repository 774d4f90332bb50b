// Copyright 2026 The cvmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cvmaser/serialize.hpp"

#include <charconv>
#include <cmath>

#include "cvmaser/circuit.hpp"
#include "cvmaser/error.hpp"
#include "json.hpp"

namespace cvmaser {

using Json = nlohmann::ordered_json;

namespace {

Json conventions_json() {
    Json c;
    c["commutator"] = "[x,p]=i/2";
    c["hbar"] = 1;
    c["annihilation"] = "a=x+ip";
    c["husimi"] = "Q(alpha)=<alpha|rho|alpha>/pi, alpha=x+ip";
    return c;
}

Json parse_json(const std::string &text, const char *what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw DocumentError(DocumentError::Stage::Parse, "", std::string(what) + ": " + e.what());
    }
}

[[noreturn]] void invalid(const std::string &path, const std::string &msg) {
    throw DocumentError(DocumentError::Stage::Validate, path, msg);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string convention_header(const std::vector<int> &cutoffs) {
    std::string s = "# conventions: [x,p]=i/2, hbar=1, a=x+ip\n# cutoffs:";
    for (int c : cutoffs) {
        s += " " + std::to_string(c);
    }
    return s + "\n";
}

std::string qgrid_to_csv(const QGrid &grid, const std::vector<int> &cutoffs, std::size_t mode) {
    std::string out = convention_header(cutoffs);
    out += "# husimi: Q(alpha)=<alpha|rho|alpha>/pi, alpha=x+ip\n";
    out += "# mode: " + std::to_string(mode) + "\n";
    out += "# corner_leakage: " + format_double(grid.corner_leakage) + "\n";
    out += "x,p,q\n";
    for (int ix = 0; ix < grid.spec.x.count; ++ix) {
        for (int ip = 0; ip < grid.spec.p.count; ++ip) {
            out += format_double(grid.spec.x.at(ix));
            out += ',';
            out += format_double(grid.spec.p.at(ip));
            out += ',';
            out += format_double(grid.values(ix, ip));
            out += '\n';
        }
    }
    return out;
}

std::string samples_to_csv(const std::vector<double> &samples, const std::vector<int> &cutoffs, std::size_t mode,
                           double theta) {
    std::string out = convention_header(cutoffs);
    out += "# mode: " + std::to_string(mode) + "\n# theta: " + format_double(theta) + "\n";
    out += "sample\n";
    for (double s : samples) {
        out += format_double(s) + "\n";
    }
    return out;
}

std::string pump_trace_to_text(const std::vector<PumpRecord> &trace, const std::vector<int> &cutoffs,
                               const PumpConfig &cfg) {
    std::string out = convention_header(cutoffs);
    out += "# epsilon: " + format_double(cfg.epsilon) + "\n";
    out += "# kappa: " + format_double(cfg.kappa) + "\n";
    out += "# t_int: " + format_double(cfg.t_int) + "\n";
    out += "step var_x var_p purity\n";
    for (const auto &r : trace) {
        out += std::to_string(r.step) + " " + format_double(r.var_x) + " " + format_double(r.var_p) + " " +
               format_double(r.purity) + "\n";
    }
    return out;
}

std::string plan_to_json(const GatePlan &plan, const std::vector<int> &cutoffs) {
    Json j;
    j["schema_version"] = 1;
    j["conventions"] = conventions_json();
    j["cutoffs"] = cutoffs;
    j["target"] = plan.target.to_string();
    j["total_time"] = plan.total_time;
    j["style"] = plan.style == CompileStyle::Balanced ? "balanced" : "literal";
    j["repetitions"] = plan.repetitions;
    if (plan.recipe) {
        j["derivation"] = plan.recipe->label();
    }
    j["step_count"] = plan.step_count();
    j["steps"] = Json::array();
    for (const auto &s : plan.steps) {
        j["steps"].push_back({{"primitive", s.primitive}, {"sign", s.sign}, {"duration", s.duration}});
    }
    return j.dump(2) + "\n";
}

GatePlan plan_from_json(const std::string &text) {
    Json j = parse_json(text, "plan");
    GatePlan plan;
    try {
        plan.target = parse_polynomial(j.at("target").get<std::string>());
        plan.total_time = j.at("total_time").get<double>();
        plan.style = j.value("style", "literal") == "balanced" ? CompileStyle::Balanced : CompileStyle::Literal;
        plan.repetitions = j.value("repetitions", 1);
        const Json &steps = j.at("steps");
        for (std::size_t k = 0; k < steps.size(); ++k) {
            PlanStep s{steps[k].at("primitive").get<std::string>(), steps[k].at("sign").get<int>(),
                       steps[k].at("duration").get<double>()};
            if ((s.sign != 1 && s.sign != -1) || !(s.duration >= 0)) {
                invalid("steps[" + std::to_string(k) + "]", "sign must be +-1 and duration nonnegative");
            }
            plan.steps.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception &e) {
        invalid("plan", e.what());
    }
    return plan;
}

std::string report_to_json(const FidelityReport &report, const std::vector<int> &cutoffs,
                           const FidelityReport *baseline) {
    auto body = [](const FidelityReport &r) {
        Json j;
        j["step_count"] = r.step_count;
        j["probes"] = Json::object();
        for (const auto &p : r.probes) {
            j["probes"][p.name] = p.fidelity;
        }
        j["mean_fidelity"] = r.mean_fidelity;
        j["min_fidelity"] = r.min_fidelity;
        j["operator_error_leakage_free"] = r.operator_error_block;
        j["operator_error_full"] = r.operator_error_full;
        return j;
    };
    Json j;
    j["schema_version"] = 1;
    j["conventions"] = conventions_json();
    j["cutoffs"] = cutoffs;
    j["plan"] = body(report);
    if (baseline) {
        j["identity_baseline"] = body(*baseline);
    }
    return j.dump(2) + "\n";
}

PrimitiveSet primitives_from_json(const std::string &text) {
    Json j = parse_json(text, "primitives");
    if (j.is_string() && j.get<std::string>() == "standard") {
        return PrimitiveSet::standard();
    }
    if (!j.is_object() || !j.contains("primitives")) {
        invalid("primitives", "expected {\"primitives\": {...}} or \"standard\"");
    }
    const Json &p = j.at("primitives");
    if (p.is_string() && p.get<std::string>() == "standard") {
        return PrimitiveSet::standard();
    }
    if (!p.is_object() || p.empty()) {
        invalid("primitives", "expected a nonempty object of id: polynomial");
    }
    PrimitiveSet set;
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (!it.value().is_string()) {
            invalid("primitives." + it.key(), "expected a polynomial string");
        }
        try {
            set.add(it.key(), parse_polynomial(it.value().get<std::string>()));
        } catch (const Error &e) {
            invalid("primitives." + it.key(), e.what());
        }
    }
    return set;
}

SynthJob synth_job_from_json(const std::string &text) {
    Json j = parse_json(text, "synthesis job");
    if (!j.is_object()) {
        invalid("", "expected an object");
    }
    static const char *known[] = {"schema_version", "target", "time", "cutoff", "tolerance",
                                  "max_depth", "max_degree", "step_budget"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *k : known) {
            ok = ok || it.key() == k;
        }
        if (!ok) {
            invalid(it.key(), "unknown field");
        }
    }
    SynthJob job;
    if (j.value("schema_version", 1) != 1) {
        invalid("schema_version", "unsupported version");
    }
    if (!j.contains("target") || !j["target"].is_string()) {
        invalid("target", "required polynomial string");
    }
    job.target_text = j["target"].get<std::string>();
    try {
        job.target = parse_polynomial(job.target_text);
    } catch (const Error &e) {
        invalid("target", e.what());
    }
    auto num = [&](const char *key, double fallback) {
        if (!j.contains(key)) {
            return fallback;
        }
        if (!j[key].is_number()) {
            invalid(key, "expected a number");
        }
        return j[key].get<double>();
    };
    if (!j.contains("time")) {
        invalid("time", "required field missing");
    }
    job.time = num("time", 0.0);
    job.cutoff = static_cast<int>(num("cutoff", 20));
    job.tolerance = num("tolerance", 1e-2);
    job.options.closure.max_depth = static_cast<int>(num("max_depth", 4));
    job.options.closure.max_degree = static_cast<int>(num("max_degree", kDefaultMaxDegree));
    job.options.step_budget = static_cast<std::size_t>(num("step_budget", 100000));
    if (job.cutoff < 2) {
        invalid("cutoff", "must be at least 2");
    }
    if (!(job.tolerance > 0)) {
        invalid("tolerance", "must be positive");
    }
    if (job.options.closure.max_depth < 0) {
        invalid("max_depth", "must be nonnegative");
    }
    return job;
}

}  // namespace cvmaser
