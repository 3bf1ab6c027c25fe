#include "drq/model.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "drq/expr.hpp"

namespace drq {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw DomainError("model field '" + path + "': " + msg);
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Scalar parse_coeff(const json& j, const std::string& path, int nvars) {
    std::string text = require_string(j, path);
    try {
        return parse_scalar(text, nvars);
    } catch (const ParseError& e) {
        fail(path, std::string(e.what()));
    }
}

}  // namespace

Model parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("model: invalid JSON: ") + e.what());
    }
    Model m;
    m.name = j.contains("name") ? require_string(j["name"], "name") : "model";
    int n = require_int(j.at("dim"), "dim");
    int l = require_int(j.at("cartan_dim"), "cartan_dim");
    if (n < 1 || l < 0 || l > n) fail("cartan_dim", "out of range");
    std::vector<std::string> labels;
    if (j.contains("basis")) {
        for (size_t t = 0; t < j["basis"].size(); ++t)
            labels.push_back(require_string(j["basis"][t], "basis[" + std::to_string(t) + "]"));
        if (static_cast<int>(labels.size()) != n) fail("basis", "label count must equal dim");
    }
    auto alg = std::make_shared<LieAlgebra>(n, l, labels);

    if (j.contains("brackets")) {
        for (size_t t = 0; t < j["brackets"].size(); ++t) {
            std::string path = "brackets[" + std::to_string(t) + "]";
            const json& b = j["brackets"][t];
            int bi = require_int(b.at("i"), path + ".i"), bj = require_int(b.at("j"), path + ".j"),
                bk = require_int(b.at("k"), path + ".k");
            if (bi < 1 || bi > n || bj < 1 || bj > n || bk < 1 || bk > n)
                fail(path, "index out of range (1-based)");
            Scalar c = parse_coeff(b.at("c"), path + ".c", l);
            try {
                alg->set_bracket(bi - 1, bj - 1, bk - 1, c);
            } catch (const Error& e) {
                fail(path, e.what());
            }
        }
    }
    auto diag = alg->validate();
    if (!diag.ok()) {
        std::string msg = "algebra validation failed:";
        for (const auto& v : diag.jacobi_violations) msg += " " + v;
        for (const auto& v : diag.abelian_violations) msg += " " + v;
        throw DomainError(msg);
    }
    m.algebra = alg;

    if (j.contains("r")) {
        MultiVector r(alg, 2);
        for (size_t t = 0; t < j["r"].size(); ++t) {
            std::string path = "r[" + std::to_string(t) + "]";
            const json& e = j["r"][t];
            int a = require_int(e.at("i"), path + ".i"), b = require_int(e.at("j"), path + ".j");
            if (a < 1 || a > n || b < 1 || b > n || a == b) fail(path, "index out of range (1-based)");
            Scalar c = parse_coeff(e.at("coeff"), path + ".coeff", l);
            if (a < b)
                r.add_term({a - 1, b - 1}, c);
            else
                r.add_term({b - 1, a - 1}, -c);
        }
        m.r = DynamicalR(alg, r);
    }

    if (j.contains("weyl_curvature")) {
        Frame frame(alg);
        for (size_t t = 0; t < j["weyl_curvature"].size(); ++t) {
            std::string path = "weyl_curvature[" + std::to_string(t) + "]";
            const json& w = j["weyl_curvature"][t];
            int order = require_int(w.at("order"), path + ".order");
            if (order < 1) fail(path + ".order", "ħ-orders start at 1");
            FrameForm form(frame, 2);
            for (size_t s = 0; s < w.at("terms").size(); ++s) {
                std::string tpath = path + ".terms[" + std::to_string(s) + "]";
                const json& e = w["terms"][s];
                int A = require_int(e.at("A"), tpath + ".A"), B = require_int(e.at("B"), tpath + ".B");
                if (A < 1 || A > frame.N || B < 1 || B > frame.N || A == B)
                    fail(tpath, "frame index out of range (1-based)");
                Scalar c = parse_coeff(e.at("coeff"), tpath + ".coeff", l);
                if (A < B)
                    form.add_term({A - 1, B - 1}, c);
                else
                    form.add_term({B - 1, A - 1}, -c);
            }
            m.weyl_curvature.push_back({order, form});
        }
    }

    if (j.contains("gauge")) {
        const json& g = j["gauge"];
        GaugeElement ge;
        ge.log.assign(n, Scalar(l));
        for (size_t t = 0; t < g.at("log").size(); ++t) {
            std::string path = "gauge.log[" + std::to_string(t) + "]";
            int a = require_int(g["log"][t].at("a"), path + ".a");
            if (a < 1 || a > n) fail(path + ".a", "index out of range (1-based)");
            ge.log[a - 1] = parse_coeff(g["log"][t].at("coeff"), path + ".coeff", l);
        }
        ge.nilpotency = require_int(g.at("nilpotency"), "gauge.nilpotency");
        if (ge.nilpotency < 1) fail("gauge.nilpotency", "must be positive");
        m.gauge = ge;
    }

    if (j.contains("base_point")) {
        std::vector<GaussianRational> pt;
        for (size_t t = 0; t < j["base_point"].size(); ++t) {
            std::string path = "base_point[" + std::to_string(t) + "]";
            Scalar s = parse_coeff(j["base_point"][t], path, l);
            if (!s.is_constant()) fail(path, "base point entries must be constants");
            pt.push_back(s.constant_value());
        }
        if (static_cast<int>(pt.size()) != l) fail("base_point", "needs cartan_dim entries");
        m.base_point = pt;
    }
    return m;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("model: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize_model(const Model& m) {
    json j;
    j["name"] = m.name;
    int n = m.algebra->dim(), l = m.algebra->cartan_dim();
    j["dim"] = n;
    j["cartan_dim"] = l;
    json basis = json::array();
    for (int a = 0; a < n; ++a) basis.push_back(m.algebra->label(a));
    j["basis"] = basis;
    json brackets = json::array();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Scalar s = m.algebra->bracket_coeff(a, b, c);
                if (s.is_zero()) continue;
                brackets.push_back({{"i", a + 1}, {"j", b + 1}, {"k", c + 1}, {"c", s.str()}});
            }
    j["brackets"] = brackets;
    if (m.r) {
        json r = json::array();
        for (const auto& [idx, c] : m.r->r.terms())
            r.push_back({{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"coeff", c.str()}});
        j["r"] = r;
    }
    if (!m.weyl_curvature.empty()) {
        json wc = json::array();
        for (const auto& [order, form] : m.weyl_curvature) {
            json terms = json::array();
            for (const auto& [idx, c] : form.terms())
                terms.push_back({{"A", idx[0] + 1}, {"B", idx[1] + 1}, {"coeff", c.str()}});
            wc.push_back({{"order", order}, {"terms", terms}});
        }
        j["weyl_curvature"] = wc;
    }
    if (m.gauge) {
        json log = json::array();
        for (int a = 0; a < n; ++a)
            if (!m.gauge->log[a].is_zero())
                log.push_back({{"a", a + 1}, {"coeff", m.gauge->log[a].str()}});
        j["gauge"] = {{"log", log}, {"nilpotency", m.gauge->nilpotency}};
    }
    if (m.base_point) {
        json pt = json::array();
        for (const auto& v : *m.base_point) pt.push_back(Scalar(l, v).str());
        j["base_point"] = pt;
    }
    return j.dump(2);
}

}  // namespace drq
