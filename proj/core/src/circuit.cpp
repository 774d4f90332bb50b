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


#include "cvmaser/circuit.hpp"

#include <cmath>
#include <set>

#include "cvmaser/error.hpp"
#include "cvmaser/polynomial.hpp"
#include "json.hpp"

namespace cvmaser {

using Json = nlohmann::ordered_json;

bool OutputRequest::operator==(const OutputRequest &o) const {
    auto same_axis = [](const AxisSpec &a, const AxisSpec &b) {
        return a.min == b.min && a.max == b.max && a.count == b.count;
    };
    bool grids = grid.has_value() == o.grid.has_value() &&
                 (!grid || (same_axis(grid->x, o.grid->x) && same_axis(grid->p, o.grid->p)));
    return kind == o.kind && name == o.name && file == o.file && mode == o.mode && grids && op == o.op &&
           theta == o.theta && samples == o.samples && seed == o.seed && reference == o.reference;
}

namespace {

[[noreturn]] void invalid(const std::string &path, const std::string &msg) {
    throw DocumentError(DocumentError::Stage::Validate, path, msg);
}

class Reader {
   public:
    Reader(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            invalid(path_, "expected an object");
        }
    }

    ~Reader() = default;

    const std::string &path() const {
        return path_;
    }

    std::string sub(const std::string &key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string &key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const Json &get(const std::string &key) {
        if (!has(key)) {
            invalid(sub(key), "required field missing");
        }
        return j_.at(key);
    }

    double number(const std::string &key) {
        const Json &v = get(key);
        if (!v.is_number()) {
            invalid(sub(key), "expected a number");
        }
        double d = v.get<double>();
        if (!std::isfinite(d)) {
            invalid(sub(key), "expected a finite number");
        }
        return d;
    }

    double number_or(const std::string &key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::uint64_t unsigned_integer(const std::string &key) {
        const Json &v = get(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            invalid(sub(key), "expected a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string string(const std::string &key) {
        const Json &v = get(key);
        if (!v.is_string()) {
            invalid(sub(key), "expected a string");
        }
        return v.get<std::string>();
    }

    bool boolean_or(const std::string &key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const Json &v = j_.at(key);
        if (!v.is_boolean()) {
            invalid(sub(key), "expected true or false");
        }
        return v.get<bool>();
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                invalid(sub(it.key()), "unknown field");
            }
        }
    }

   private:
    const Json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string index_path(const std::string &base, std::size_t k) {
    return base + "[" + std::to_string(k) + "]";
}

const Json &require_array(const Json &j, const std::string &path) {
    if (!j.is_array()) {
        invalid(path, "expected an array");
    }
    return j;
}

ModeInit read_init(const Json &j, const std::string &path) {
    Reader r(j, path);
    ModeInit m;
    std::string state = r.string("state");
    if (state == "vacuum") {
        m.kind = ModeInit::Kind::Vacuum;
    } else if (state == "fock") {
        m.kind = ModeInit::Kind::Fock;
        m.n = static_cast<int>(r.unsigned_integer("n"));
    } else if (state == "coherent") {
        m.kind = ModeInit::Kind::Coherent;
        const Json &a = r.get("alpha");
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            invalid(r.sub("alpha"), "expected [re, im]");
        }
        m.alpha = Complex(a[0].get<double>(), a[1].get<double>());
        m.normalize = r.boolean_or("normalize", false);
    } else {
        invalid(r.sub("state"), "unknown state '" + state + "' (vacuum, fock, coherent)");
    }
    r.finish();
    return m;
}

std::vector<ModeInit> read_inits(const Json &j, const std::string &path) {
    require_array(j, path);
    std::vector<ModeInit> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(read_init(j[k], index_path(path, k)));
    }
    return out;
}

AxisSpec read_axis(const Json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number_integer()) {
        invalid(path, "expected [min, max, count]");
    }
    AxisSpec a{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
    if (a.count < 2) {
        invalid(path, "grid count must be at least 2");
    }
    if (!(a.max > a.min)) {
        invalid(path, "grid max must exceed min");
    }
    return a;
}

CircuitOp read_op(const Json &j, const std::string &path) {
    Reader r(j, path);
    CircuitOp op;
    if (r.has("gate")) {
        op.kind = CircuitOp::Kind::Gate;
        std::string name = r.string("gate");
        auto kind = parse_gate_kind(name);
        if (!kind) {
            invalid(r.sub("gate"), "unknown gate '" + name + "'");
        }
        op.gate.kind = *kind;
        op.gate.targets.clear();
        const Json &t = require_array(r.get("targets"), r.sub("targets"));
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (!t[k].is_number_unsigned()) {
                invalid(index_path(r.sub("targets"), k), "expected a mode index");
            }
            op.gate.targets.push_back(t[k].get<std::size_t>());
        }
        op.gate.params.clear();
        if (r.has("params")) {
            const Json &p = require_array(r.get("params"), r.sub("params"));
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (!p[k].is_number()) {
                    invalid(index_path(r.sub("params"), k), "expected a number");
                }
                op.gate.params.push_back(p[k].get<double>());
            }
        }
        r.finish();
        return op;
    }
    std::string kind = r.string("op");
    if (kind == "dispersive") {
        op.kind = CircuitOp::Kind::Dispersive;
        op.dispersive.mode = r.unsigned_integer("mode");
        op.dispersive.delta = r.number("delta");
        op.dispersive.g = r.number("g");
        op.dispersive.t = r.number("t");
    } else if (kind == "pump") {
        op.kind = CircuitOp::Kind::Pump;
        op.pump.epsilon = r.number("epsilon");
        op.pump.kappa = r.number_or("kappa", 1.0);
        op.pump.t_int = r.number_or("t_int", 0.1);
        op.pump.atoms = r.unsigned_integer("atoms");
        if (r.has("trace_file")) {
            op.pump.trace_file = r.string("trace_file");
        }
    } else if (kind == "measure") {
        op.kind = CircuitOp::Kind::Measure;
        op.measure.g = r.number("g");
        op.measure.t = r.number("t");
        op.measure.angle = r.number_or("angle", 0.0);
        if (r.has("postselect")) {
            std::string b = r.string("postselect");
            if (b != "e" && b != "g") {
                invalid(r.sub("postselect"), "expected \"e\" or \"g\"");
            }
            op.measure.postselect = b == "e" ? 0 : 1;
        }
        if (r.has("seed")) {
            op.measure.seed = r.unsigned_integer("seed");
        } else if (!op.measure.postselect) {
            invalid(r.sub("seed"), "stochastic measurement needs an explicit seed");
        }
    } else {
        invalid(r.sub("op"), "unknown op '" + kind + "' (dispersive, pump, measure)");
    }
    r.finish();
    return op;
}

OutputRequest read_output(const Json &j, const std::string &path) {
    Reader r(j, path);
    OutputRequest o;
    std::string type = r.string("type");
    if (type == "qgrid") {
        o.kind = OutputRequest::Kind::QGrid;
        o.mode = r.has("mode") ? r.unsigned_integer("mode") : 0;
        o.file = r.string("file");
        if (r.has("grid")) {
            Reader g(r.get("grid"), r.sub("grid"));
            o.grid = GridSpec{read_axis(g.get("x"), g.sub("x")), read_axis(g.get("p"), g.sub("p"))};
            g.finish();
        }
    } else if (type == "expectation" || type == "variance") {
        o.kind = type == "expectation" ? OutputRequest::Kind::Expectation : OutputRequest::Kind::Variance;
        o.name = r.string("name");
        o.op = r.string("operator");
        try {
            parse_polynomial(o.op);
        } catch (const Error &e) {
            invalid(r.sub("operator"), e.what());
        }
    } else if (type == "homodyne") {
        o.kind = OutputRequest::Kind::Homodyne;
        o.mode = r.has("mode") ? r.unsigned_integer("mode") : 0;
        o.theta = r.number_or("theta", 0.0);
        o.samples = r.unsigned_integer("samples");
        if (o.samples == 0) {
            invalid(r.sub("samples"), "must be positive");
        }
        if (!r.has("seed")) {
            invalid(r.sub("seed"), "homodyne sampling needs an explicit seed");
        }
        o.seed = r.unsigned_integer("seed");
        o.file = r.string("file");
    } else if (type == "fidelity") {
        o.kind = OutputRequest::Kind::Fidelity;
        o.name = r.string("name");
        o.reference = read_inits(r.get("reference"), r.sub("reference"));
    } else {
        invalid(r.sub("type"), "unknown output '" + type + "' (qgrid, expectation, variance, homodyne, fidelity)");
    }
    r.finish();
    return o;
}

Json init_json(const ModeInit &m) {
    Json j;
    switch (m.kind) {
        case ModeInit::Kind::Vacuum:
            j["state"] = "vacuum";
            break;
        case ModeInit::Kind::Fock:
            j["state"] = "fock";
            j["n"] = m.n;
            break;
        case ModeInit::Kind::Coherent:
            j["state"] = "coherent";
            j["alpha"] = {m.alpha.real(), m.alpha.imag()};
            if (m.normalize) {
                j["normalize"] = true;
            }
            break;
    }
    return j;
}

Json axis_json(const AxisSpec &a) {
    return Json::array({a.min, a.max, a.count});
}

}  // namespace

void validate_circuit(const CircuitDocument &doc) {
    if (doc.schema_version != kCircuitSchemaVersion) {
        invalid("schema_version", "unsupported version " + std::to_string(doc.schema_version));
    }
    if (doc.modes.empty()) {
        invalid("modes", "at least one mode is required");
    }
    for (std::size_t k = 0; k < doc.modes.size(); ++k) {
        if (doc.modes[k] < 2) {
            invalid(index_path("modes", k), "cutoff must be at least 2");
        }
    }
    if (doc.initial.size() != doc.modes.size()) {
        invalid("initial", "expected one entry per mode");
    }
    for (std::size_t k = 0; k < doc.initial.size(); ++k) {
        if (doc.initial[k].kind == ModeInit::Kind::Fock && doc.initial[k].n >= doc.modes[k]) {
            invalid(index_path("initial", k) + ".n", "Fock level not below the mode cutoff");
        }
    }
    SpaceSignature space = SpaceSignature::modes(doc.modes);
    for (std::size_t k = 0; k < doc.ops.size(); ++k) {
        std::string path = index_path("ops", k);
        const CircuitOp &op = doc.ops[k];
        switch (op.kind) {
            case CircuitOp::Kind::Gate:
                try {
                    validate_gate(op.gate, space);
                } catch (const Error &e) {
                    invalid(path, e.what());
                }
                break;
            case CircuitOp::Kind::Dispersive:
                if (op.dispersive.mode >= doc.modes.size()) {
                    invalid(path + ".mode", "no such mode");
                }
                if (op.dispersive.delta == 0.0) {
                    invalid(path + ".delta", "detuning must be nonzero");
                }
                break;
            case CircuitOp::Kind::Pump:
                if (doc.modes.size() != 1) {
                    invalid(path, "pump needs a single-mode circuit");
                }
                if (!(op.pump.epsilon >= 0.0 && op.pump.epsilon < 1.0)) {
                    invalid(path + ".epsilon", "must lie in [0, 1)");
                }
                if (op.pump.atoms < 1) {
                    invalid(path + ".atoms", "must be at least 1");
                }
                if (op.pump.t_int < 0) {
                    invalid(path + ".t_int", "must be nonnegative");
                }
                break;
            case CircuitOp::Kind::Measure:
                if (doc.modes.size() != 1) {
                    invalid(path, "measure needs a single-mode circuit");
                }
                if (op.measure.g < 0) {
                    invalid(path + ".g", "must be nonnegative");
                }
                break;
        }
    }
    std::set<std::string> names;
    std::set<std::string> files;
    for (std::size_t k = 0; k < doc.ops.size(); ++k) {
        const auto &op = doc.ops[k];
        if (op.kind == CircuitOp::Kind::Pump && !op.pump.trace_file.empty() && !files.insert(op.pump.trace_file).second) {
            invalid(index_path("ops", k) + ".trace_file", "duplicate output file");
        }
    }
    for (std::size_t k = 0; k < doc.outputs.size(); ++k) {
        std::string path = index_path("outputs", k);
        const OutputRequest &o = doc.outputs[k];
        if ((o.kind == OutputRequest::Kind::QGrid || o.kind == OutputRequest::Kind::Homodyne) &&
            o.mode >= doc.modes.size()) {
            invalid(path + ".mode", "no such mode");
        }
        if (!o.file.empty()) {
            if (o.file.find('/') != std::string::npos || o.file == "results.json" || o.file.front() == '.') {
                invalid(path + ".file", "must be a plain file name other than results.json");
            }
            if (!files.insert(o.file).second) {
                invalid(path + ".file", "duplicate output file");
            }
        }
        if (!o.name.empty() && !names.insert(o.name).second) {
            invalid(path + ".name", "duplicate result name");
        }
        if (o.kind == OutputRequest::Kind::Expectation || o.kind == OutputRequest::Kind::Variance) {
            HermitianPolynomial poly = parse_polynomial(o.op);
            if (poly.num_modes() > doc.modes.size()) {
                invalid(path + ".operator", "refers to a mode outside the circuit");
            }
        }
        if (o.kind == OutputRequest::Kind::Fidelity) {
            if (o.reference.size() != doc.modes.size()) {
                invalid(path + ".reference", "expected one entry per mode");
            }
            for (std::size_t m = 0; m < o.reference.size(); ++m) {
                if (o.reference[m].kind == ModeInit::Kind::Fock && o.reference[m].n >= doc.modes[m]) {
                    invalid(index_path(path + ".reference", m) + ".n", "Fock level not below the mode cutoff");
                }
            }
        }
    }
}

CircuitDocument parse_circuit(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw DocumentError(DocumentError::Stage::Parse, "", e.what());
    }
    Reader r(j, "");
    CircuitDocument doc;
    const Json &v = r.get("schema_version");
    if (!v.is_number_integer()) {
        invalid("schema_version", "expected an integer");
    }
    doc.schema_version = v.get<int>();
    if (doc.schema_version != kCircuitSchemaVersion) {
        invalid("schema_version", "unsupported version " + std::to_string(doc.schema_version));
    }
    const Json &modes = require_array(r.get("modes"), "modes");
    for (std::size_t k = 0; k < modes.size(); ++k) {
        if (!modes[k].is_number_integer()) {
            invalid(index_path("modes", k), "expected an integer cutoff");
        }
        doc.modes.push_back(modes[k].get<int>());
    }
    if (r.has("initial")) {
        doc.initial = read_inits(r.get("initial"), "initial");
    } else {
        doc.initial.assign(doc.modes.size(), ModeInit{});
    }
    if (r.has("ops")) {
        const Json &ops = require_array(r.get("ops"), "ops");
        for (std::size_t k = 0; k < ops.size(); ++k) {
            doc.ops.push_back(read_op(ops[k], index_path("ops", k)));
        }
    }
    if (r.has("outputs")) {
        const Json &outs = require_array(r.get("outputs"), "outputs");
        for (std::size_t k = 0; k < outs.size(); ++k) {
            doc.outputs.push_back(read_output(outs[k], index_path("outputs", k)));
        }
    }
    r.finish();
    validate_circuit(doc);
    return doc;
}

std::string circuit_to_json(const CircuitDocument &doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    j["modes"] = doc.modes;
    j["initial"] = Json::array();
    for (const auto &m : doc.initial) {
        j["initial"].push_back(init_json(m));
    }
    j["ops"] = Json::array();
    for (const auto &op : doc.ops) {
        Json o;
        switch (op.kind) {
            case CircuitOp::Kind::Gate:
                o["gate"] = std::string(gate_kind_name(op.gate.kind));
                o["targets"] = op.gate.targets;
                o["params"] = op.gate.params;
                break;
            case CircuitOp::Kind::Dispersive:
                o["op"] = "dispersive";
                o["mode"] = op.dispersive.mode;
                o["delta"] = op.dispersive.delta;
                o["g"] = op.dispersive.g;
                o["t"] = op.dispersive.t;
                break;
            case CircuitOp::Kind::Pump:
                o["op"] = "pump";
                o["epsilon"] = op.pump.epsilon;
                o["kappa"] = op.pump.kappa;
                o["t_int"] = op.pump.t_int;
                o["atoms"] = op.pump.atoms;
                if (!op.pump.trace_file.empty()) {
                    o["trace_file"] = op.pump.trace_file;
                }
                break;
            case CircuitOp::Kind::Measure:
                o["op"] = "measure";
                o["g"] = op.measure.g;
                o["t"] = op.measure.t;
                o["angle"] = op.measure.angle;
                if (op.measure.postselect) {
                    o["postselect"] = *op.measure.postselect == 0 ? "e" : "g";
                } else {
                    o["seed"] = op.measure.seed;
                }
                break;
        }
        j["ops"].push_back(o);
    }
    j["outputs"] = Json::array();
    for (const auto &out : doc.outputs) {
        Json o;
        switch (out.kind) {
            case OutputRequest::Kind::QGrid:
                o["type"] = "qgrid";
                o["mode"] = out.mode;
                o["file"] = out.file;
                if (out.grid) {
                    o["grid"] = {{"x", axis_json(out.grid->x)}, {"p", axis_json(out.grid->p)}};
                }
                break;
            case OutputRequest::Kind::Expectation:
            case OutputRequest::Kind::Variance:
                o["type"] = out.kind == OutputRequest::Kind::Expectation ? "expectation" : "variance";
                o["name"] = out.name;
                o["operator"] = out.op;
                break;
            case OutputRequest::Kind::Homodyne:
                o["type"] = "homodyne";
                o["mode"] = out.mode;
                o["theta"] = out.theta;
                o["samples"] = out.samples;
                o["seed"] = out.seed;
                o["file"] = out.file;
                break;
            case OutputRequest::Kind::Fidelity:
                o["type"] = "fidelity";
                o["name"] = out.name;
                o["reference"] = Json::array();
                for (const auto &m : out.reference) {
                    o["reference"].push_back(init_json(m));
                }
                break;
        }
        j["outputs"].push_back(o);
    }
    return j.dump(2) + "\n";
}

CircuitDocument scale_cutoffs(const CircuitDocument &doc, int factor) {
    CircuitDocument out = doc;
    for (int &c : out.modes) {
        c *= factor;
    }
    return out;
}

StateVector initial_state(const std::vector<int> &cutoffs, const std::vector<ModeInit> &init) {
    if (cutoffs.size() != init.size()) {
        fail(ErrorKind::InvalidArgument, "initial state needs one entry per mode");
    }
    StateVector psi = [&] {
        SpaceSignature one = SpaceSignature::modes({cutoffs[0]});
        switch (init[0].kind) {
            case ModeInit::Kind::Fock:
                return make_fock(one, 0, init[0].n);
            case ModeInit::Kind::Coherent:
                return make_coherent(one, 0, init[0].alpha, init[0].normalize);
            case ModeInit::Kind::Vacuum:
                break;
        }
        return make_vacuum(one);
    }();
    for (std::size_t k = 1; k < cutoffs.size(); ++k) {
        SpaceSignature one = SpaceSignature::modes({cutoffs[k]});
        StateVector f = make_vacuum(one);
        if (init[k].kind == ModeInit::Kind::Fock) {
            f = make_fock(one, 0, init[k].n);
        } else if (init[k].kind == ModeInit::Kind::Coherent) {
            f = make_coherent(one, 0, init[k].alpha, init[k].normalize);
        }
        psi = tensor(psi, f);
    }
    return psi;
}

}  // namespace cvmaser
