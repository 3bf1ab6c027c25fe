#pragma once

#include <optional>
#include <string>

#include "drq/dynr.hpp"
#include "drq/geometry.hpp"

namespace drq {

/* JSON model file: the algebra, the candidate r, and the optional gauge /
 * Weyl-curvature / base-point data driving the pipeline commands. */
struct Model {
    std::string name;
    AlgebraPtr algebra;
    std::optional<DynamicalR> r;
    std::vector<std::pair<int, FrameForm>> weyl_curvature;  // built on demand
    std::optional<GaugeElement> gauge;
    std::optional<std::vector<GaussianRational>> base_point;

    DynamicalR require_r() const {
        if (!r) throw DomainError("model: no r-matrix given");
        return *r;
    }
};

/* Throws Error with a field path on schema violations, ParseError (with
 * position) on bad expressions, and embeds validate() diagnostics in the
 * message on Jacobi / abelian-𝔥 failures. */
Model load_model(const std::string& path);
Model parse_model(const std::string& json_text);

/* canonical serialization (stable across runs) */
std::string serialize_model(const Model& m);

}  // namespace drq
