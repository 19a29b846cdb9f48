#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "ghm/gh_estimate.hpp"
#include "ghm/hausdorff.hpp"
#include "ghm_cli/run_config.hpp"

namespace ghm::cli {

struct sample_args {
    std::string space;
    grid_resolution grid{100, 100};
    std::string out_path;  // empty: stdout
};

struct hausdorff_args {
    std::string cloud_a;
    std::string cloud_b;
    std::string algo = "tree";
};

struct estimate_args {
    gh_pair pair = gh_pair::e2_h2;
};

struct table_args {
    bool use_default = false;
};

struct graph_build_args {
    std::size_t max_factors = 2;
    std::string table_path;
    std::string out_path;  // .dot -> DOT, anything else -> JSON; empty: JSON on stdout
};

struct graph_search_args {
    std::string graph_path;  // empty: build from max_factors and the cached table
    std::size_t max_factors = 2;
    std::string algo = "exhaustive";
    std::string start;
    std::optional<std::size_t> budget;
    std::string eval = "synthetic:factor-count";
};

// Each command writes its result to `out` and notes to `err`, returning an exit code.
int cmd_sample(const run_config& cfg, const sample_args& a, std::ostream& out, std::ostream& err);
int cmd_diagnose(const run_config& cfg, std::ostream& out, std::ostream& err);
int cmd_hausdorff(const run_config& cfg, const hausdorff_args& a, std::ostream& out, std::ostream& err);
int cmd_estimate(const run_config& cfg, const estimate_args& a, std::ostream& out, std::ostream& err);
int cmd_table(const run_config& cfg, const table_args& a, std::ostream& out, std::ostream& err);
int cmd_graph_build(const run_config& cfg, const graph_build_args& a, std::ostream& out, std::ostream& err);
int cmd_graph_search(const run_config& cfg, const graph_search_args& a, std::ostream& out, std::ostream& err);

// Diagnose report body; `hard_pass` is set when psi1^2 + psi2^2 = 1, the h
// norm identity and F(0, 0) = 0 all hold within tolerance.
json diagnose_report(const blanusa::constants& k, bool& hard_pass);

hausdorff_result run_hausdorff(const point_cloud& a, const point_cloud& b, const std::string& algo,
                               const run_config& cfg);

}  // namespace ghm::cli
