// Command-line front end. Every subcommand reads a graph document and prints
// JSON (or writes the requested file). Exit status: 0 success, 1 validation
// or computation failure, 2 unreadable input.

#include "drfan/drfan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace drfan;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kParse = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::ParseError, path + ": cannot open");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void print(const Json& j)
{
    std::cout << j.dump(2) << "\n";
}

Json vector_json(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(integer_to_json(x));
    return a;
}

Json matrix_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (const auto& r : m)
        a.push_back(vector_json(r));
    return a;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

int cmd_validate(const std::string& path)
{
    RawGraphDocument raw = parse_graph_document(read_file(path));
    ValidationReport r = validate_graph(raw.data);
    Json out{{"ok", r.ok()}, {"violations", Json::array()}};
    for (const auto& v : r.violations)
        out["violations"].push_back(Json{{"invariant", to_string(v.violation)}, {"detail", v.detail}});
    if (r.ok()) {
        Graph g = Graph::from_data(raw.data);
        out["unstable_vertices"] = Json::array();
        for (VertexId v : unstable_vertices(g))
            out["unstable_vertices"].push_back(raw.labels.vertices[v]);
    }
    print(out);
    return r.ok() ? kOk : kInvalid;
}

int cmd_genus(const GraphDocument& doc)
{
    const Graph& g = doc.graph;
    Json kappa = Json::object();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        kappa[label_text(doc.labels.vertices[v])] = canonical_degree(g, static_cast<VertexId>(v));
    print(Json{{"genus", graph_genus(g)}, {"betti", first_betti_number(g)}, {"canonical_degree", kappa}});
    return kOk;
}

int cmd_base_weighting(const GraphDocument& doc)
{
    const Graph& g = doc.graph;
    Weighting w = base_weighting(g);
    print(Json{{"flows", flows_to_json(flows(g, w), doc.labels.edges)},
               {"half_edges", vector_json(w.values())},
               {"bound", integer_to_json(enumeration_bound(g, w))}});
    return kOk;
}

int cmd_fan(const GraphDocument& doc, const CatalogOptions& opt, const std::string& out_path)
{
    std::string text = emit_fan_json(make_fan_document(doc, build_fan(doc.graph, opt)));
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kOk;
}

int cmd_rays(const GraphDocument& doc, const CatalogOptions& opt)
{
    Fan f = build_fan(doc.graph, opt);
    print(Json{{"edge_order", doc.labels.edges}, {"rays", matrix_json(f.rays())}});
    return kOk;
}

int cmd_dual(const GraphDocument& doc, const std::string& list)
{
    const Graph& g = doc.graph;
    IntVector f(g.edge_count(), 0);
    std::vector<bool> given(g.edge_count(), false);
    for (const auto& item : split(list, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError, "--flows: expected edge=value, got " + item);
        EdgeId e = edges_by_label(doc, {item.substr(0, eq)}).front();
        try {
            f[e] = Integer(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "--flows: bad integer in " + item);
        }
        given[e] = true;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (!given[e])
            throw Error(ErrorKind::ParseError, "--flows: no value for edge " + label_text(doc.labels.edges[e]));

    Weighting w = weighting_from_flows(g, f);
    WeightingCheck check = is_weighting(g, w);
    if (!check) {
        print(Json{{"is_weighting", false}, {"defects", vector_json(check.defects)}});
        return kInvalid;
    }
    Cone c = cone_of_weighting(g, w);
    PolyCone dual = polar_dual(c);
    print(Json{{"is_weighting", true},
               {"edge_order", doc.labels.edges},
               {"cone_rays", matrix_json(c.rays())},
               {"dual_generators", matrix_json(dual_cone_generators(g, w))},
               {"polar_dual",
                Json{{"inequalities", matrix_json(dual.constraints().inequalities)},
                     {"equalities", matrix_json(dual.constraints().equalities)}}},
               {"monoid_generators", matrix_json(monoid_generators(dual))}});
    return kOk;
}

int cmd_contract(const GraphDocument& doc, const std::string& list, const CatalogOptions& opt)
{
    std::vector<EdgeId> s = edges_by_label(doc, split(list, ','));
    ContractionResult c = contract(doc.graph, s);
    CompatReport r = check_contraction_compat(doc.graph, s, opt);
    std::size_t positive = static_cast<std::size_t>(
        std::count_if(r.entries.begin(), r.entries.end(), [](const CompatEntry& e) { return e.positive_cycle; }));
    print(Json{{"graph", to_json(contract_document(doc, c))},
               {"compatibility", Json{{"ok", r.ok()}, {"witnesses", r.entries.size()}, {"positive_cycle", positive}}}});
    return r.ok() ? kOk : kInvalid;
}

int cmd_slice(const GraphDocument& doc, const CatalogOptions& opt, const std::string& svg_path)
{
    Fan f = build_fan(doc.graph, opt);
    Slice s = slice_fan(f);
    std::string svg = render_slice_svg(s, doc.labels.edges);
    if (!svg_path.empty())
        write_file(svg_path, svg);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& c : s.cells)
        if (c.maximal)
            ++counts[c.dim];
    print(Json{{"maximal_points", counts[0]}, {"maximal_segments", counts[1]}, {"maximal_polygons", counts[2]},
               {"cells", s.cells.size()}});
    if (svg_path.empty())
        std::cout << svg;
    return kOk;
}

int cmd_oracle_check(const GraphDocument& doc, const CatalogOptions& opt, long long radius)
{
    const Graph& g = doc.graph;
    Integer r = radius >= 0 ? Integer(radius) : Integer(2 * enumeration_bound(g, base_weighting(g)));
    std::set<ConeKey> expected = oracle_cone_catalog(g, r);
    std::set<ConeKey> got;
    for (const auto& e : cone_catalog(g, opt))
        got.insert(e.cone.key());
    bool agree = got == expected;
    print(Json{{"agree", agree}, {"box_radius", integer_to_json(r)}, {"catalog", got.size()},
               {"oracle", expected.size()}});
    return agree ? kOk : kInvalid;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cones of thicknesses compatible with integer weightings of a leg-weighted graph"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for enumeration and verification")->check(CLI::Range(1u, 256u));

    std::string path, out_path, flows_spec, edges_spec, svg_path;
    long long radius = -1;
    auto graph_arg = [&](CLI::App* sub) { sub->add_option("graph", path, "graph document (JSON)")->required(); };

    auto* validate = app.add_subcommand("validate", "check the graph invariants");
    auto* genus = app.add_subcommand("genus", "genus, Betti number and canonical degrees");
    auto* base = app.add_subcommand("base-weighting", "the spanning-tree weighting and its enumeration bound");
    auto* fan = app.add_subcommand("fan", "build the fan and write it as JSON");
    fan->add_option("--out", out_path, "output file (default: stdout)");
    auto* rays = app.add_subcommand("rays", "rays of the fan");
    auto* dual = app.add_subcommand("dual", "cone, polar dual and chart monoid of one weighting");
    dual->add_option("--flows", flows_spec, "edge=value,... (flow from the edge's 'from' to its 'to')")->required();
    auto* contract_cmd = app.add_subcommand("contract", "contract edges and check cone compatibility");
    contract_cmd->add_option("--edges", edges_spec, "comma-separated edge ids")->required();
    auto* slice = app.add_subcommand("slice", "slice of the fan by sum t = 1, as SVG");
    slice->add_option("--svg", svg_path, "SVG output file (default: stdout)");
    auto* oracle = app.add_subcommand("oracle-check", "compare the catalog with the brute-force oracle");
    oracle->add_option("--box-radius", radius, "oracle box radius (default: twice the enumeration bound)")
        ->check(CLI::NonNegativeNumber);
    for (auto* sub : {validate, genus, base, fan, rays, dual, contract_cmd, slice, oracle})
        graph_arg(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    CatalogOptions opt;
    opt.threads = threads;
    try {
        if (validate->parsed())
            return cmd_validate(path);
        GraphDocument doc = parse_graph_json(read_file(path));
        if (genus->parsed())
            return cmd_genus(doc);
        if (base->parsed())
            return cmd_base_weighting(doc);
        if (fan->parsed())
            return cmd_fan(doc, opt, out_path);
        if (rays->parsed())
            return cmd_rays(doc, opt);
        if (dual->parsed())
            return cmd_dual(doc, flows_spec);
        if (contract_cmd->parsed())
            return cmd_contract(doc, edges_spec, opt);
        if (slice->parsed())
            return cmd_slice(doc, opt, svg_path);
        if (oracle->parsed())
            return cmd_oracle_check(doc, opt, radius);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? kParse : kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
