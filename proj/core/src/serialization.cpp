#include "ghm/serialization.hpp"

#include "ghm/error.hpp"

namespace ghm {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw parameter_error(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

}  // namespace

json to_json(const sampling_spec& s) {
    return {{"n_radial", s.n_radial}, {"n_angular", s.n_angular}, {"r_min", s.r_min}, {"r_max", s.r_max}};
}

sampling_spec sampling_spec_from_json(const json& j) {
    return guarded("sampling spec", [&] {
        return sampling_spec{j.at("n_radial").get<std::size_t>(), j.at("n_angular").get<std::size_t>(),
                             j.at("r_min").get<double>(), j.at("r_max").get<double>()};
    });
}

json to_json(const quadrature_spec& q) {
    return {{"method", q.method}, {"abs_tol", q.abs_tol}, {"max_subdivisions", q.max_subdivisions}};
}

quadrature_spec quadrature_spec_from_json(const json& j) {
    return guarded("quadrature", [&] {
        quadrature_spec q;
        q.method = j.value("method", q.method);
        q.abs_tol = j.value("abs_tol", q.abs_tol);
        q.max_subdivisions = j.value("max_subdivisions", q.max_subdivisions);
        return q;
    });
}

json to_json(const blanusa::constants& k) {
    return {{"A", k.A},
            {"G1", k.G1},
            {"G2", k.G2},
            {"c", k.c},
            {"epsilon", k.epsilon},
            {"quadrature", to_json(k.quadrature)},
            {"sup_grid_points", k.sup_grid_points},
            {"G1_coarse_step", k.G1_coarse},
            {"G2_coarse_step", k.G2_coarse},
            {"sup_scan_stable", k.sup_scan_stable}};
}

blanusa::constants constants_from_json(const json& j) {
    return guarded("constants", [&] {
        blanusa::constants k;
        k.A = j.at("A").get<double>();
        k.G1 = j.at("G1").get<double>();
        k.G2 = j.at("G2").get<double>();
        k.c = j.at("c").get<double>();
        k.epsilon = j.at("epsilon").get<double>();
        k.quadrature = quadrature_spec_from_json(j.at("quadrature"));
        k.sup_grid_points = j.at("sup_grid_points").get<std::size_t>();
        k.G1_coarse = j.value("G1_coarse_step", k.G1);
        k.G2_coarse = j.value("G2_coarse_step", k.G2);
        k.sup_scan_stable = j.value("sup_scan_stable", true);
        return k;
    });
}

json to_json(const embedding_candidate& c) {
    std::vector<int> axes(c.active_axes().begin(), c.active_axes().end());
    return {{"family", to_string(c.family)},
            {"axes", axes},
            {"negate", c.negate},
            {"offset_axis", c.offset_axis},
            {"offset_value", c.offset_value}};
}

embedding_candidate candidate_from_json(const json& j) {
    return guarded("candidate", [&] {
        embedding_candidate c;
        const auto family = j.at("family").get<std::string>();
        if (family == "euclidean-plane") c.family = embedding_family::euclidean_plane;
        else if (family == "sphere-triple") c.family = embedding_family::sphere_triple;
        else throw parameter_error("unknown candidate family '" + family + "'");
        const auto axes = j.at("axes").get<std::vector<int>>();
        if (axes.size() != c.axis_count()) throw parameter_error("candidate axis count does not match its family");
        std::copy(axes.begin(), axes.end(), c.axes.begin());
        c.negate = j.at("negate").get<bool>();
        c.offset_axis = j.at("offset_axis").get<int>();
        c.offset_value = j.at("offset_value").get<double>();
        validate(c);
        return c;
    });
}

json to_json(const candidate_grid_spec& g) {
    return {{"offset_steps", g.offset_steps},
            {"offset_range", {g.offset_lo, g.offset_hi}},
            {"offset_axes", g.offset_axes},
            {"coarse", {g.coarse.n_radial, g.coarse.n_angular}},
            {"fine", {g.fine.n_radial, g.fine.n_angular}},
            {"refine_top_k", g.refine_top_k},
            {"exhaustive", g.exhaustive}};
}

candidate_grid_spec grid_spec_from_json(const json& j) {
    return guarded("candidate grid", [&] {
        candidate_grid_spec g;
        g.offset_steps = j.value("offset_steps", g.offset_steps);
        if (j.contains("offset_range")) {
            g.offset_lo = j["offset_range"].at(0).get<double>();
            g.offset_hi = j["offset_range"].at(1).get<double>();
        }
        g.offset_axes = j.value("offset_axes", g.offset_axes);
        if (j.contains("coarse")) g.coarse = {j["coarse"].at(0).get<std::size_t>(), j["coarse"].at(1).get<std::size_t>()};
        if (j.contains("fine")) g.fine = {j["fine"].at(0).get<std::size_t>(), j["fine"].at(1).get<std::size_t>()};
        g.refine_top_k = j.value("refine_top_k", g.refine_top_k);
        g.exhaustive = j.value("exhaustive", g.exhaustive);
        validate(g);
        return g;
    });
}

json to_json(const gh_estimate& e) {
    const auto spaces = pair_spaces(e.pair);
    return {{"pair", to_string(e.pair)},
            {"spaces", {spaces[0].key(), spaces[1].key()}},
            {"value", e.value},
            {"raw_value", e.raw_value},
            {"best_candidate", to_json(e.best_candidate)},
            {"coarse_value", e.coarse_value},
            {"cloud_specs_used", {to_json(e.source_spec), to_json(e.target_spec)}},
            {"candidates_evaluated", e.candidates_evaluated},
            {"exhaustive", e.exhaustive}};
}

gh_estimate estimate_from_json(const json& j) {
    return guarded("estimate", [&] {
        gh_estimate e;
        e.pair = parse_gh_pair(j.at("pair").get<std::string>());
        e.value = j.at("value").get<double>();
        e.raw_value = j.value("raw_value", e.value);
        e.best_candidate = candidate_from_json(j.at("best_candidate"));
        e.coarse_value = j.at("coarse_value").get<double>();
        e.source_spec = sampling_spec_from_json(j.at("cloud_specs_used").at(0));
        e.target_spec = sampling_spec_from_json(j.at("cloud_specs_used").at(1));
        e.candidates_evaluated = j.at("candidates_evaluated").get<std::size_t>();
        e.exhaustive = j.value("exhaustive", false);
        return e;
    });
}

json to_json(const distance_table& t) {
    json out = json::object();
    const std::array<std::array<model_space, 2>, 3> pairs{{{model_space::e2(), model_space::s2()},
                                                           {model_space::e2(), model_space::h2()},
                                                           {model_space::s2(), model_space::h2()}}};
    for (const auto& p : pairs) {
        const auto& e = t.entry(p[0], p[1]);
        out[p[0].key() + "-" + p[1].key()] = {{"value", e.value}, {"provenance", to_string(e.source)}};
    }
    return out;
}

distance_table table_from_json(const json& j) {
    return guarded("distance table", [&] {
        auto t = distance_table::defaults();
        for (const auto& [key, entry] : j.items()) {
            const auto dash = key.find('-');
            if (dash == std::string::npos) throw parameter_error("distance table key '" + key + "' is not A-B");
            const auto a = model_space::parse(key.substr(0, dash));
            const auto b = model_space::parse(key.substr(dash + 1));
            const auto source = entry.contains("provenance")
                                    ? parse_provenance(entry["provenance"].get<std::string>())
                                    : provenance::user_supplied;
            t.set(a, b, entry.at("value").get<double>(), source);
        }
        return t;
    });
}

json to_json(const hausdorff_result& r) {
    return {{"distance", r.distance},
            {"witness_a", r.witness_a},
            {"witness_b", r.witness_b},
            {"direction_ab", r.direction_ab},
            {"direction_ba", r.direction_ba}};
}

json to_json(const search_result& r) {
    json traj = json::array();
    for (const auto& [node, value] : r.trajectory) traj.push_back({{"node", node.canonical_key()}, {"value", value}});
    return {{"best_node", r.best_node.canonical_key()},
            {"best_value", r.best_value},
            {"trajectory", traj},
            {"evaluations", r.evaluations}};
}

json to_json(const blanusa::pullback_report& r) {
    return {{"x", r.x},
            {"y", r.y},
            {"metric", {{r.metric[0][0], r.metric[0][1]}, {r.metric[1][0], r.metric[1][1]}}},
            {"deviation", r.deviation}};
}

}  // namespace ghm
