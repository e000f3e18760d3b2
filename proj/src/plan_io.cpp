#include "diracgl/plan_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "diracgl/errors.hpp"

namespace diracgl {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw plan_error("plan: unknown field \"" + key + "\" in " + where);
    }
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw plan_error("plan: " + where + " needs numeric field \"" + key + "\"");
    return obj[key].get<double>();
}

}  // namespace

PlanDocument parse_plan(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw plan_error(std::string("plan: JSON parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw plan_error("plan: document must be a JSON object");
    reject_unknown(doc, {"boundary", "remove", "rescale", "add", "grid"}, "plan document");

    PlanDocument out;
    if (doc.contains("boundary")) {
        if (!doc["boundary"].is_string()) throw plan_error("plan: boundary must be a string");
        const std::string b = doc["boundary"].get<std::string>();
        if (b == "alpha0")
            out.plan.bc = BoundaryCondition::alpha0;
        else if (b == "alphaPiOver2")
            out.plan.bc = BoundaryCondition::alphaHalfPi;
        else
            throw plan_error("plan: boundary must be \"alpha0\" or \"alphaPiOver2\"");
    }
    if (doc.contains("remove")) {
        if (!doc["remove"].is_array()) throw plan_error("plan: remove must be an array");
        for (const auto& v : doc["remove"]) {
            if (!v.is_number_integer()) throw plan_error("plan: remove entries must be integers");
            const int k = v.get<int>();
            if (!out.plan.removals.insert(k).second)
                throw plan_error("plan: duplicate removal index " + std::to_string(k));
        }
    }
    if (doc.contains("rescale")) {
        if (!doc["rescale"].is_array()) throw plan_error("plan: rescale must be an array");
        for (const auto& v : doc["rescale"]) {
            if (!v.is_object()) throw plan_error("plan: rescale entries must be objects");
            reject_unknown(v, {"k", "b"}, "rescale entry");
            if (!v.contains("k") || !v["k"].is_number_integer())
                throw plan_error("plan: rescale entry needs integer field \"k\"");
            const int k = v["k"].get<int>();
            const double b = require_number(v, "b", "rescale entry");
            if (!out.plan.rescalings.emplace(k, b).second)
                throw plan_error("plan: duplicate rescale index " + std::to_string(k));
        }
    }
    if (doc.contains("add")) {
        if (!doc["add"].is_array()) throw plan_error("plan: add must be an array");
        for (const auto& v : doc["add"]) {
            if (!v.is_object()) throw plan_error("plan: add entries must be objects");
            reject_unknown(v, {"mu", "c"}, "add entry");
            out.plan.additions.emplace_back(require_number(v, "mu", "add entry"),
                                            require_number(v, "c", "add entry"));
        }
    }
    if (doc.contains("grid")) {
        if (!doc["grid"].is_object()) throw plan_error("plan: grid must be an object");
        reject_unknown(doc["grid"], {"x_max", "step"}, "grid");
        if (doc["grid"].contains("x_max"))
            out.grid_x_max = require_number(doc["grid"], "x_max", "grid");
        if (doc["grid"].contains("step"))
            out.grid_step = require_number(doc["grid"], "step", "grid");
        if (!(out.grid_x_max > 0.0) || !(out.grid_step > 0.0))
            throw plan_error("plan: grid extents must be positive");
    }
    out.plan.validate();
    return out;
}

PlanDocument load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw plan_error("plan: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str());
}

std::string plan_echo(const PlanDocument& doc) {
    std::ostringstream os;
    os << "boundary: "
       << (doc.plan.bc == BoundaryCondition::alpha0 ? "alpha0" : "alphaPiOver2") << "\n";
    os << "grid: x_max=" << doc.grid_x_max << " step=" << doc.grid_step << "\n";
    char buf[160];
    for (int k : doc.plan.removals) {
        std::snprintf(buf, sizeof(buf), "remove  k=%-4d lambda=%.17g\n", k,
                      half_axis_eigenvalue(k, doc.plan.bc));
        os << buf;
    }
    for (const auto& [k, b] : doc.plan.rescalings) {
        std::snprintf(buf, sizeof(buf), "rescale k=%-4d lambda=%.17g norming %.17g -> %.17g\n", k,
                      half_axis_eigenvalue(k, doc.plan.bc),
                      norming_constant(k, doc.plan.bc).norming, b);
        os << buf;
    }
    for (const auto& [mu, c] : doc.plan.additions) {
        std::snprintf(buf, sizeof(buf), "add     lambda=%.17g norming=%.17g\n", mu, c);
        os << buf;
    }
    if (doc.plan.empty()) os << "(empty plan: model operator unchanged)\n";
    return os.str();
}

}  // namespace diracgl
