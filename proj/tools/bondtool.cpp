#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bond/blocks.hpp"
#include "bond/cw_dp.hpp"
#include "bond/cw_expression.hpp"
#include "bond/generators.hpp"
#include "bond/graph.hpp"
#include "bond/io.hpp"
#include "bond/minor.hpp"
#include "bond/oracle.hpp"
#include "bond/report.hpp"
#include "bond/tree_decomposition.hpp"
#include "bond/tw_dp.hpp"
#include "bond/xi.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<int> parse_id_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

int emit_and_decide(const bond::SolveReport& report, const bond::Graph& g,
                    const std::string& format) {
    std::cout << bond::emit_result(report, g, bond::parse_format(format));
    if (report.k >= 0) return report.yes ? 0 : 1;
    return 0;
}

// 64-bit xorshift; good enough for corpus sampling and stable across builds.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

bond::Graph random_connected_graph(int n, int extra_edges, Rng& rng) {
    while (true) {
        bond::Graph g(n);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
        int want = std::min<int>(static_cast<int>(pairs.size()), n - 1 + extra_edges);
        // Sample `want` distinct pairs.
        for (int i = 0; i < want; ++i) {
            int j = i + rng.below(static_cast<int>(pairs.size()) - i);
            std::swap(pairs[i], pairs[j]);
        }
        for (int i = 0; i < want; ++i) g.add_edge(pairs[i].first, pairs[i].second);
        if (bond::is_connected(g)) return g;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers and instance generators for largest-bond problems"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "Largest bond via win/win + treewidth DP");
    std::string solve_file, solve_format = "text";
    int solve_k = 1;
    bool solve_oracle_check = false, solve_stats = false;
    solve->add_option("file", solve_file)->required();
    solve->add_option("--k", solve_k, "decision threshold")->required();
    solve->add_option("--format", solve_format, "json|text|dot");
    solve->add_flag("--oracle-check", solve_oracle_check,
                    "cross-validate against the brute-force oracle when small");
    solve->add_flag("--stats", solve_stats, "print DP state statistics to stderr");
    solve->callback([&]() {
        bond::Graph g = bond::parse_graph_file(solve_file);
        auto start = Clock::now();
        bond::TwDpStats stats;
        bond::SolveDecision dec = bond::solve_largest_bond(g, solve_k, &stats);
        bond::SolveReport rep{"largest-bond", g.num_vertices(), g.num_edges(),
                              solve_k,        dec.yes,          dec.optimum,
                              dec.witness,    ms_since(start)};
        if (solve_stats)
            std::cerr << "dp nodes=" << stats.num_nodes
                      << " max_states=" << stats.max_states_per_node
                      << " total_states=" << stats.total_states
                      << " bell_bound_ok=" << stats.bell_bound_ok << "\n";
        if (solve_oracle_check && g.num_vertices() <= bond::oracle::kMaxVertices) {
            bond::Bond ref = bond::oracle::largest_bond_bf(g);
            bool ok = dec.exact ? dec.optimum == ref.size
                                : (dec.yes == (ref.size >= solve_k) &&
                                   dec.optimum <= ref.size);
            if (!ok) throw std::logic_error("oracle check failed: solver " +
                                            std::to_string(dec.optimum) + " vs oracle " +
                                            std::to_string(ref.size));
            std::cerr << "oracle check ok (oracle optimum " << ref.size << ")\n";
        }
        exit_code = emit_and_decide(rep, g, solve_format);
    });

    // ---- solve-st ----
    auto* solve_st = app.add_subcommand("solve-st", "Largest st-bond via block path + st DP");
    std::string st_file, st_format = "text";
    int st_k = 1, st_s = 0, st_t = 1;
    bool st_oracle_check = false;
    solve_st->add_option("file", st_file)->required();
    solve_st->add_option("--k", st_k)->required();
    solve_st->add_option("--s", st_s)->required();
    solve_st->add_option("--t", st_t)->required();
    solve_st->add_option("--format", st_format, "json|text|dot");
    solve_st->add_flag("--oracle-check", st_oracle_check);
    solve_st->callback([&]() {
        bond::Graph g = bond::parse_graph_file(st_file);
        auto start = Clock::now();
        bond::SolveDecision dec = bond::solve_largest_st_bond(g, st_s, st_t, st_k);
        bond::SolveReport rep{"largest-st-bond", g.num_vertices(), g.num_edges(),
                              st_k,              dec.yes,          dec.optimum,
                              dec.witness,       ms_since(start)};
        if (st_oracle_check && g.num_vertices() <= bond::oracle::kMaxVertices) {
            bond::Bond ref = bond::oracle::largest_st_bond_bf(g, st_s, st_t);
            bool ok = dec.exact ? dec.optimum == ref.size
                                : (dec.yes == (ref.size >= st_k) && dec.optimum <= ref.size);
            if (!ok) throw std::logic_error("oracle check failed");
            std::cerr << "oracle check ok (oracle optimum " << ref.size << ")\n";
        }
        exit_code = emit_and_decide(rep, g, st_format);
    });

    // ---- solve-cw ----
    auto* solve_cw = app.add_subcommand("solve-cw", "Largest bond from a w-expression");
    std::string cw_expr_file, cw_format = "text";
    int cw_k = -1;
    std::vector<int> cw_st;
    bool cw_oracle_check = false;
    solve_cw->add_option("--expr", cw_expr_file, "w-expression file")->required();
    solve_cw->add_option("--k", cw_k, "optional decision threshold");
    solve_cw->add_option("--st", cw_st, "s t: solve the st variant")->expected(2);
    solve_cw->add_option("--format", cw_format, "json|text|dot");
    solve_cw->add_flag("--oracle-check", cw_oracle_check);
    solve_cw->callback([&]() {
        bond::WExpression e = bond::parse_w_expression_file(cw_expr_file);
        bond::WEval ev = bond::eval_w_expression(e);
        auto start = Clock::now();
        bond::CwResult res;
        std::string problem;
        if (cw_st.empty()) {
            res = bond::largest_bond_cw(e);
            problem = "largest-bond-cw";
        } else {
            res = bond::largest_st_bond_cw(e, cw_st[0], cw_st[1]);
            problem = "largest-st-bond-cw";
        }
        bond::Bond witness = bond::make_bond(ev.graph, res.side);
        if (cw_oracle_check && ev.graph.num_vertices() <= bond::oracle::kMaxVertices) {
            int ref = cw_st.empty()
                          ? bond::oracle::largest_bond_bf(ev.graph).size
                          : bond::oracle::largest_st_bond_bf(ev.graph, cw_st[0], cw_st[1]).size;
            if (ref != res.size) throw std::logic_error("oracle check failed");
            std::cerr << "oracle check ok\n";
        }
        bond::SolveReport rep{problem,
                              ev.graph.num_vertices(),
                              ev.graph.num_edges(),
                              cw_k,
                              cw_k >= 0 && res.size >= cw_k,
                              res.size,
                              witness,
                              ms_since(start)};
        exit_code = emit_and_decide(rep, ev.graph, cw_format);
    });

    // ---- oracle ----
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference solvers (n <= 24)");
    std::string or_file, or_format = "text";
    int or_k = -1, or_threads = 1, or_side_size = -1, or_s = -1, or_t = -1;
    bool or_weight = false, or_enumerate = false, or_yutsis = false;
    oracle_cmd->add_option("file", or_file)->required();
    oracle_cmd->add_option("--k", or_k);
    auto* opt_s = oracle_cmd->add_option("--s", or_s, "with --t: solve the st variant");
    auto* opt_t = oracle_cmd->add_option("--t", or_t);
    opt_s->needs(opt_t);
    opt_t->needs(opt_s);
    oracle_cmd->add_option("--side-size", or_side_size, "require |S| exactly this");
    oracle_cmd->add_flag("--weight", or_weight, "maximize crossing weight");
    oracle_cmd->add_flag("--enumerate", or_enumerate, "list every bond");
    oracle_cmd->add_flag("--yutsis", or_yutsis,
                         "decide whether the largest bond attains |E|-|V|+2");
    oracle_cmd->add_option("--threads", or_threads, "parallel side enumeration");
    oracle_cmd->add_option("--format", or_format, "json|text|dot");
    oracle_cmd->callback([&]() {
        bond::Graph g = bond::parse_graph_file(or_file);
        auto start = Clock::now();
        if (or_enumerate) {
            auto bonds = bond::oracle::enumerate_bonds(g);
            nlohmann::json j;
            j["count"] = bonds.size();
            j["sizes"] = nlohmann::json::array();
            for (const auto& b : bonds) j["sizes"].push_back(b.size);
            std::cout << j.dump(2) << "\n";
            return;
        }
        if (or_yutsis) {
            bool yes = bond::oracle::is_yutsis_bf(g);
            std::cout << (yes ? "yutsis" : "not-yutsis") << "\n";
            exit_code = yes ? 0 : 1;
            return;
        }
        bond::Bond best;
        std::string problem;
        if (or_s >= 0) {
            best = bond::oracle::largest_st_bond_bf(g, or_s, or_t, or_threads);
            problem = "oracle-st-bond";
        } else if (or_weight) {
            best = bond::oracle::largest_weight_bond_bf(g, or_threads);
            problem = "oracle-weight-bond";
        } else if (or_side_size >= 0) {
            auto r = bond::oracle::largest_bond_side_size_bf(g, or_side_size);
            if (!r) throw std::runtime_error("no bond with the requested side size");
            best = *r;
            problem = "oracle-side-size-bond";
        } else {
            best = bond::oracle::largest_bond_bf(g, or_threads);
            problem = "oracle-bond";
        }
        int value = or_weight ? best.weight : best.size;
        bond::SolveReport rep{problem, g.num_vertices(), g.num_edges(), or_k,
                              or_k >= 0 && value >= or_k, value, best,
                              ms_since(start)};
        exit_code = emit_and_decide(rep, g, or_format);
    });

    // ---- check-bond ----
    auto* check = app.add_subcommand("check-bond", "Verify a side set");
    std::string cb_file, cb_side;
    check->add_option("file", cb_file)->required();
    check->add_option("--side", cb_side, "comma-separated vertex ids")->required();
    check->callback([&]() {
        bond::Graph g = bond::parse_graph_file(cb_file);
        bond::VertexSet side(g.num_vertices());
        for (int v : parse_id_list(cb_side)) side.insert(v);
        bond::VerifyResult r = bond::verify_bond(g, side);
        if (r.ok()) {
            std::cout << "bond size=" << r.bond->size << " weight=" << r.bond->weight
                      << "\n";
            exit_code = 0;
        } else {
            std::cout << bond::to_string(r.defect) << "\n";
            exit_code = 1;
        }
    });

    // ---- blocks ----
    auto* blocks_cmd = app.add_subcommand("blocks", "Block-cut tree summary");
    std::string bl_file;
    blocks_cmd->add_option("file", bl_file)->required();
    blocks_cmd->callback([&]() {
        bond::Graph g = bond::parse_graph_file(bl_file);
        bond::BlockCutTree bct = bond::block_cut_tree(g);
        nlohmann::json j;
        j["blocks"] = nlohmann::json::array();
        for (std::size_t b = 0; b < bct.blocks.size(); ++b)
            j["blocks"].push_back({{"vertices", bct.blocks[b].to_vector()},
                                   {"edges", bct.block_edges[b].size()},
                                   {"bridge", bct.is_bridge(static_cast<int>(b))}});
        j["cut_vertices"] = bct.cut_vertices.to_vector();
        std::cout << j.dump(2) << "\n";
    });

    // ---- td ----
    auto* td_cmd = app.add_subcommand("td", "Tree decomposition utilities");
    td_cmd->require_subcommand(1);
    auto* td_validate = td_cmd->add_subcommand("validate", "Check a PACE-style file");
    std::string tdv_graph, tdv_td;
    td_validate->add_option("graph", tdv_graph)->required();
    td_validate->add_option("--td", tdv_td, "PACE-style decomposition file")->required();
    td_validate->callback([&]() {
        bond::Graph g = bond::parse_graph_file(tdv_graph);
        bond::TreeDecomposition td = bond::parse_td(read_text_file(tdv_td));
        if (auto bad = bond::validate_tree_decomposition(g, td)) {
            std::cout << "INVALID: " << bad->message << "\n";
            exit_code = 1;
        } else {
            std::cout << "valid, width " << td.width() << "\n";
        }
    });
    auto* td_nice = td_cmd->add_subcommand("nice", "Nicify (heuristic td if none given)");
    std::string tdn_graph, tdn_td;
    td_nice->add_option("graph", tdn_graph)->required();
    td_nice->add_option("--td", tdn_td, "PACE-style decomposition file");
    td_nice->callback([&]() {
        bond::Graph g = bond::parse_graph_file(tdn_graph);
        bond::TreeDecomposition td = tdn_td.empty()
                                         ? bond::heuristic_tree_decomposition(g)
                                         : bond::parse_td(read_text_file(tdn_td));
        bond::NiceTreeDecomposition ntd = bond::make_nice(td, g);
        static const char* names[] = {"leaf", "introduce-vertex", "introduce-edge",
                                      "forget-vertex", "join"};
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
            const bond::NiceNode& nd = ntd.nodes[i];
            std::cout << i << ' ' << names[nd.type];
            if (nd.type == bond::NiceNode::IntroduceVertex ||
                nd.type == bond::NiceNode::ForgetVertex)
                std::cout << ' ' << nd.vertex;
            if (nd.type == bond::NiceNode::IntroduceEdge)
                std::cout << ' ' << g.edge(nd.edge).u << '-' << g.edge(nd.edge).v;
            std::cout << " bag={";
            for (std::size_t x = 0; x < nd.bag.size(); ++x)
                std::cout << (x ? "," : "") << nd.bag[x];
            std::cout << "}\n";
        }
        std::cerr << "nodes=" << ntd.nodes.size() << " width=" << td.width() << "\n";
    });
    auto* td_heur = td_cmd->add_subcommand("heuristic", "Min-fill decomposition to PACE file");
    std::string tdh_graph, tdh_out;
    td_heur->add_option("graph", tdh_graph)->required();
    td_heur->add_option("-o,--out", tdh_out, "output path (stdout if omitted)");
    td_heur->callback([&]() {
        bond::Graph g = bond::parse_graph_file(tdh_graph);
        bond::TreeDecomposition td = bond::heuristic_tree_decomposition(g);
        std::string text = bond::serialize_td(td, g.num_vertices());
        if (tdh_out.empty()) std::cout << text;
        else write_text_file(tdh_out, text);
        std::cerr << "width " << td.width() << "\n";
    });

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Instance generators");
    gen->require_subcommand(1);
    gen->fallthrough();  // lets --seed appear after the nested subcommand
    std::uint64_t gen_seed = 1;
    gen->add_option("--seed", gen_seed, "seed for randomized generation");

    auto sidecar = [](const std::string& out_path, const nlohmann::json& j) {
        write_text_file(out_path + ".json", j.dump(2) + "\n");
    };

    auto* gen_psi = gen->add_subcommand("psi", "n copies + two adjacent universal vertices");
    std::string gp_in, gp_out;
    gen_psi->add_option("pattern", gp_in)->required();
    gen_psi->add_option("-o,--out", gp_out)->required();
    gen_psi->callback([&]() {
        bond::Graph g = bond::parse_graph_file(gp_in);
        bond::Graph out = bond::psi(g);
        bond::write_graph_file(out, gp_out);
        int n = g.num_vertices();
        nlohmann::json j{{"construction", "psi"},
                         {"pattern_n", n},
                         {"pattern_m", g.num_edges()},
                         {"v_a", bond::psi_vertex_a(n)},
                         {"v_b", bond::psi_vertex_b(n)}};
        if (n <= bond::oracle::kMaxVertices) {
            int k = bond::oracle::max_cut_bf(g).first;
            j["pattern_max_cut"] = k;
            j["predicted_largest_bond"] = n * k + n * n + 1;
        }
        sidecar(gp_out, j);
    });

    auto* gen_xi = gen->add_subcommand("xi", "Iterated edge embedding tower");
    std::string gx_pattern, gx_out;
    int gx_height = 1;
    gen_xi->add_option("--pattern", gx_pattern)->required();
    gen_xi->add_option("--height", gx_height)->required();
    gen_xi->add_option("-o,--out", gx_out)->required();
    gen_xi->callback([&]() {
        bond::Graph pattern = bond::parse_graph_file(gx_pattern);
        bond::XiInstance x = bond::xi_power(pattern, gx_height);
        bond::write_graph_file(x.graph, gx_out);
        nlohmann::json j{{"construction", "xi"},
                         {"height", x.height},
                         {"pattern_n", pattern.num_vertices()},
                         {"pattern_m", pattern.num_edges()},
                         {"edge_level", x.edge_level}};
        nlohmann::json splits = nlohmann::json::array();
        for (const bond::XiSplitEdge& sp : x.splits)
            splits.push_back({{"level", sp.level},
                              {"u", sp.u},
                              {"v", sp.v},
                              {"final_edge", sp.final_edge},
                              {"copy_vertices", sp.copy_vertices},
                              {"descendants", sp.descendants}});
        j["splits"] = splits;
        if (pattern.num_vertices() <= bond::oracle::kMaxVertices) {
            int k = bond::oracle::max_cut_bf(pattern).first;
            long long predicted = 1;
            for (int i = 0; i < x.height; ++i) predicted *= k;
            j["pattern_max_cut"] = k;
            j["predicted_max_weight"] = predicted;
        }
        sidecar(gx_out, j);
    });

    auto* gen_w1 = gen->add_subcommand("w1", "Side-size-constrained hardness instance");
    std::string gw_graph, gw_out;
    int gw_k = 1;
    gen_w1->add_option("--graph", gw_graph, "regular input graph")->required();
    gen_w1->add_option("--k", gw_k)->required();
    gen_w1->add_option("-o,--out", gw_out)->required();
    gen_w1->callback([&]() {
        bond::Graph h = bond::parse_graph_file(gw_graph);
        bond::W1Instance inst = bond::w1_instance(h, gw_k);
        bond::write_graph_file(inst.graph, gw_out);
        sidecar(gw_out, nlohmann::json{{"construction", "w1"},
                                       {"k", gw_k},
                                       {"expected_bond", inst.expected_bond},
                                       {"expected_side", inst.expected_side}});
    });

    auto* gen_compose = gen->add_subcommand("compose", "Or-composition of instances");
    std::vector<std::string> gc_files;
    std::string gc_out, gc_pivots, gc_pairs;
    gen_compose->add_option("files", gc_files)->required()->expected(-1);
    gen_compose->add_option("-o,--out", gc_out)->required();
    gen_compose->add_option("--pivots", gc_pivots, "comma list, default all 0");
    gen_compose->add_option("--st-pairs", gc_pairs,
                            "s1,t1,s2,t2,...: chain st instances instead");
    gen_compose->callback([&]() {
        std::vector<bond::Graph> gs;
        for (const std::string& f : gc_files) gs.push_back(bond::parse_graph_file(f));
        if (gc_pairs.empty()) {
            std::vector<int> pivots(gs.size(), 0);
            if (!gc_pivots.empty()) pivots = parse_id_list(gc_pivots);
            bond::Graph out = bond::or_compose_bond(gs, pivots);
            bond::write_graph_file(out, gc_out);
            sidecar(gc_out, nlohmann::json{{"construction", "or-compose"},
                                           {"components", gc_files},
                                           {"pivots", pivots}});
        } else {
            std::vector<int> pairs = parse_id_list(gc_pairs);
            if (pairs.size() != 2 * gs.size())
                throw std::runtime_error("--st-pairs needs s,t per input");
            std::vector<bond::StInstance> inst;
            for (std::size_t i = 0; i < gs.size(); ++i)
                inst.push_back({gs[i], pairs[2 * i], pairs[2 * i + 1]});
            bond::StInstance out = bond::or_compose_st(inst);
            bond::write_graph_file(out.graph, gc_out);
            sidecar(gc_out, nlohmann::json{{"construction", "or-compose-st"},
                                           {"components", gc_files},
                                           {"s", out.s},
                                           {"t", out.t}});
        }
    });

    auto* gen_random = gen->add_subcommand("random", "Random connected graph corpus");
    int gr_n = 10, gr_extra = 3, gr_count = 1;
    std::string gr_out;
    gen_random->add_option("--n", gr_n)->required();
    gen_random->add_option("--extra-edges", gr_extra, "edges beyond a spanning tree");
    gen_random->add_option("--count", gr_count, "number of instances");
    gen_random->add_option("-o,--out", gr_out, "output path (suffix _i for count>1)")
        ->required();
    gen_random->callback([&]() {
        Rng rng(gen_seed);
        for (int i = 0; i < gr_count; ++i) {
            bond::Graph g = random_connected_graph(gr_n, gr_extra, rng);
            std::string path = gr_count == 1 ? gr_out
                                             : gr_out + "_" + std::to_string(i);
            bond::write_graph_file(g, path);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
