#pragma once

// JSON documents for graphs and fans, and SVG rendering of fan slices.
//
// Graph document:
//   {"vertices": [{"id", "genus"}], "edges": [{"id", "from", "to"}],
//    "legs": [{"id", "vertex", "weight"}], "twist": k}
// Edge i of the document becomes half-edges 2i (at "from") and 2i+1 (at
// "to"); legs follow in document order. Ids may be strings or integers and
// are kept verbatim as labels. Integers beyond 2^53 may be given as strings
// and are written as strings.

#include "drfan/fan.hpp"

#include <json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace drfan {

using Json = nlohmann::ordered_json;

struct GraphLabels {
    std::vector<Json> vertices;
    std::vector<Json> edges; // by edge id
    std::vector<Json> legs;  // by position in Graph::legs()
};

struct GraphDocument {
    Graph graph;
    GraphLabels labels;
};

/// Unvalidated result of reading a graph document.
struct RawGraphDocument {
    GraphData data;
    GraphLabels labels;
};

inline std::string label_text(const Json& id)
{
    return id.is_string() ? id.get<std::string>() : id.dump();
}

inline Json integer_to_json(const Integer& x)
{
    static const Integer safe = Integer(1) << 53;
    if (abs(x) <= safe)
        return static_cast<long long>(x);
    return x.str();
}

namespace io_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::ParseError, path + (what.empty() ? "" : ": " + what));
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path + "/" + key, "missing");
    return *it;
}

inline const Json& array_member(const Json& obj, const std::string& key, const std::string& path)
{
    const Json& a = member(obj, key, path);
    if (!a.is_array())
        fail(path + "/" + key, "expected an array");
    return a;
}

inline Integer parse_integer(const Json& v, const std::string& path)
{
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Integer(v.get<unsigned long long>()) : Integer(v.get<long long>());
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > start && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                            [](char c) { return c >= '0' && c <= '9'; }))
            return Integer(s);
    }
    fail(path, "expected an integer");
}

inline Json parse_id(const Json& obj, const std::string& path)
{
    const Json& id = member(obj, "id", path);
    if (!id.is_string() && !id.is_number_integer())
        fail(path + "/id", "expected a string or integer id");
    return id;
}

inline Json parse_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("", e.what());
    }
}

} // namespace io_detail

inline RawGraphDocument parse_graph_document(const std::string& text)
{
    using namespace io_detail;
    const Json doc = parse_text(text);
    if (!doc.is_object())
        fail("", "expected an object");

    RawGraphDocument out;
    std::map<std::string, VertexId> vertex_index;
    const Json& vertices = array_member(doc, "vertices", "");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string path = "/vertices/" + std::to_string(i);
        Json id = parse_id(vertices[i], path);
        Integer genus = parse_integer(member(vertices[i], "genus", path), path + "/genus");
        if (abs(genus) > 1'000'000)
            fail(path + "/genus", "out of range");
        if (!vertex_index.emplace(label_text(id), static_cast<VertexId>(i)).second)
            fail(path + "/id", "duplicate vertex id");
        out.data.genus.push_back(static_cast<int>(genus));
        out.labels.vertices.push_back(std::move(id));
    }
    auto vertex_ref = [&](const Json& v, const std::string& path) {
        if (!v.is_string() && !v.is_number_integer())
            fail(path, "expected a vertex id");
        auto it = vertex_index.find(label_text(v));
        if (it == vertex_index.end())
            fail(path, "unknown vertex " + label_text(v));
        return it->second;
    };

    std::set<std::string> edge_ids;
    const Json& edges = array_member(doc, "edges", "");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        Json id = parse_id(edges[i], path);
        if (!edge_ids.insert(label_text(id)).second)
            fail(path + "/id", "duplicate edge id");
        VertexId from = vertex_ref(member(edges[i], "from", path), path + "/from");
        VertexId to = vertex_ref(member(edges[i], "to", path), path + "/to");
        HalfEdgeId h = static_cast<HalfEdgeId>(out.data.end.size());
        out.data.end.insert(out.data.end.end(), {from, to});
        out.data.involution.insert(out.data.involution.end(), {h + 1, h});
        out.labels.edges.push_back(std::move(id));
    }

    std::set<std::string> leg_ids;
    const Json& legs = array_member(doc, "legs", "");
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const std::string path = "/legs/" + std::to_string(i);
        Json id = parse_id(legs[i], path);
        if (!leg_ids.insert(label_text(id)).second)
            fail(path + "/id", "duplicate leg id");
        VertexId v = vertex_ref(member(legs[i], "vertex", path), path + "/vertex");
        Integer weight = parse_integer(member(legs[i], "weight", path), path + "/weight");
        HalfEdgeId h = static_cast<HalfEdgeId>(out.data.end.size());
        out.data.end.push_back(v);
        out.data.involution.push_back(h);
        out.data.leg_weights[h] = std::move(weight);
        out.labels.legs.push_back(std::move(id));
    }

    out.data.twist = parse_integer(member(doc, "twist", ""), "/twist");
    return out;
}

/// Parses and validates. Throws ParseError (detail starts with the JSON
/// pointer of the offending value) or ValidationError (detail is the name of
/// the first violated invariant).
inline GraphDocument parse_graph_json(const std::string& text)
{
    RawGraphDocument raw = parse_graph_document(text);
    ValidationReport r = validate_graph(raw.data);
    if (!r.ok())
        throw Error(ErrorKind::ValidationError, to_string(r.violations.front().violation));
    return GraphDocument{Graph::from_data(std::move(raw.data)), std::move(raw.labels)};
}

inline Json to_json(const GraphDocument& doc)
{
    const Graph& g = doc.graph;
    Json out = Json::object();
    out["vertices"] = Json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out["vertices"].push_back(
            Json{{"id", doc.labels.vertices[v]}, {"genus", g.vertex_genus(static_cast<VertexId>(v))}});
    out["edges"] = Json::array();
    for (const Edge& e : g.edges())
        out["edges"].push_back(Json{{"id", doc.labels.edges[e.id]},
                                    {"from", doc.labels.vertices[g.end(e.source)]},
                                    {"to", doc.labels.vertices[g.end(e.target)]}});
    out["legs"] = Json::array();
    for (std::size_t i = 0; i < g.legs().size(); ++i) {
        HalfEdgeId h = g.legs()[i];
        out["legs"].push_back(Json{{"id", doc.labels.legs[i]},
                                   {"vertex", doc.labels.vertices[g.end(h)]},
                                   {"weight", integer_to_json(g.leg_weight(h))}});
    }
    out["twist"] = integer_to_json(g.twist());
    return out;
}

inline std::string emit_graph_json(const GraphDocument& doc)
{
    return to_json(doc).dump(2) + "\n";
}

/// Labels for a contracted graph: survivors keep theirs, and a merged vertex
/// takes the label of its smallest member.
inline GraphDocument contract_document(const GraphDocument& doc, const ContractionResult& c)
{
    GraphLabels l;
    l.vertices.resize(c.contracted.vertex_count());
    std::vector<bool> named(c.contracted.vertex_count(), false);
    for (std::size_t v = 0; v < c.vertex_map.size(); ++v)
        if (!named[c.vertex_map[v]]) {
            named[c.vertex_map[v]] = true;
            l.vertices[c.vertex_map[v]] = doc.labels.vertices[v];
        }
    for (std::size_t e = 0; e < c.edge_map.size(); ++e)
        if (c.edge_map[e] >= 0)
            l.edges.push_back(doc.labels.edges[e]);
    l.legs = doc.labels.legs;
    return GraphDocument{c.contracted, std::move(l)};
}

/// Edge ids named by their labels, in the given order.
inline std::vector<EdgeId> edges_by_label(const GraphDocument& doc, const std::vector<std::string>& names)
{
    std::vector<EdgeId> out;
    for (const auto& n : names) {
        auto it = std::find_if(doc.labels.edges.begin(), doc.labels.edges.end(),
                               [&](const Json& id) { return label_text(id) == n; });
        if (it == doc.labels.edges.end())
            throw Error(ErrorKind::UnknownEdge, n);
        out.push_back(static_cast<EdgeId>(it - doc.labels.edges.begin()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fan documents

struct FanDocument {
    Fan fan;
    std::vector<Json> edge_order;
};

inline Json flows_to_json(const IntVector& f, const std::vector<Json>& edge_order)
{
    Json m = Json::object();
    for (std::size_t e = 0; e < f.size(); ++e)
        m[label_text(edge_order[e])] = integer_to_json(f[e]);
    return m;
}

inline Json to_json(const FanDocument& doc)
{
    const Fan& f = doc.fan;
    Json out = Json::object();
    out["edge_order"] = Json(doc.edge_order);
    out["rays"] = Json::array();
    for (const auto& r : f.rays()) {
        Json row = Json::array();
        for (const auto& x : r)
            row.push_back(integer_to_json(x));
        out["rays"].push_back(std::move(row));
    }
    out["cones"] = Json::array();
    for (const auto& c : f.cones()) {
        Json cj = Json::object();
        cj["rays"] = c.rays;
        cj["dim"] = c.dimension();
        cj["maximal"] = c.maximal;
        if (c.witness_flows)
            cj["witness"] = Json{{"flows", flows_to_json(*c.witness_flows, doc.edge_order)}};
        out["cones"].push_back(std::move(cj));
    }
    out["counts"] = Json{{"rays", f.rays().size()}, {"maximal", f.maximal_count()}, {"total", f.cones().size()}};
    return out;
}

inline std::string emit_fan_json(const FanDocument& doc)
{
    return to_json(doc).dump(2) + "\n";
}

inline FanDocument make_fan_document(const GraphDocument& g, Fan fan)
{
    return FanDocument{std::move(fan), g.labels.edges};
}

inline FanDocument parse_fan_json(const std::string& text)
{
    using namespace io_detail;
    const Json doc = parse_text(text);
    if (!doc.is_object())
        fail("", "expected an object");
    FanDocument out;
    const Json& order = array_member(doc, "edge_order", "");
    for (const auto& id : order)
        out.edge_order.push_back(id);
    const std::size_t dim = out.edge_order.size();

    IntMatrix rays;
    const Json& rj = array_member(doc, "rays", "");
    for (std::size_t i = 0; i < rj.size(); ++i) {
        const std::string path = "/rays/" + std::to_string(i);
        if (!rj[i].is_array() || rj[i].size() != dim)
            fail(path, "expected " + std::to_string(dim) + " integers");
        IntVector r;
        for (std::size_t j = 0; j < dim; ++j)
            r.push_back(parse_integer(rj[i][j], path + "/" + std::to_string(j)));
        if (primitive(r) != r || is_zero(r))
            throw Error(ErrorKind::ValidationError, "ray " + std::to_string(i) + " is not primitive");
        rays.push_back(std::move(r));
    }
    if (!std::is_sorted(rays.begin(), rays.end()))
        throw Error(ErrorKind::ValidationError, "rays are not sorted");

    std::vector<Cone> cones;
    std::vector<std::optional<IntVector>> witnesses;
    std::vector<bool> maximal;
    const Json& cj = array_member(doc, "cones", "");
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const std::string path = "/cones/" + std::to_string(i);
        const Json& idx = array_member(cj[i], "rays", path);
        IntMatrix own;
        std::vector<std::size_t> indices;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (!idx[j].is_number_unsigned() || idx[j].get<std::size_t>() >= rays.size())
                fail(path + "/rays/" + std::to_string(j), "expected a ray index");
            indices.push_back(idx[j].get<std::size_t>());
            own.push_back(rays[indices.back()]);
        }
        if (!std::is_sorted(indices.begin(), indices.end()))
            throw Error(ErrorKind::ValidationError, "cone " + std::to_string(i) + " ray indices are not sorted");
        const Json& mj = member(cj[i], "maximal", path);
        if (!mj.is_boolean())
            fail(path + "/maximal", "expected a boolean");
        maximal.push_back(mj.get<bool>());
        cones.push_back(Cone::from_rays(dim, own));
        if (cj[i].contains("witness")) {
            const Json& fj = member(member(cj[i], "witness", path), "flows", path + "/witness");
            IntVector f;
            for (const auto& id : out.edge_order)
                f.push_back(parse_integer(member(fj, label_text(id), path + "/witness/flows"),
                                          path + "/witness/flows/" + label_text(id)));
            witnesses.emplace_back(std::move(f));
        } else {
            witnesses.emplace_back(std::nullopt);
        }
    }
    out.fan = Fan::assemble(dim, cones, witnesses);
    if (out.fan.cones().size() != cones.size())
        throw Error(ErrorKind::ValidationError, "duplicate cones");
    for (std::size_t i = 0; i < cones.size(); ++i) {
        auto at = out.fan.find(cones[i].key());
        if (out.fan.cones()[*at].maximal != maximal[i])
            throw Error(ErrorKind::ValidationError, "cone " + std::to_string(i) + " has a wrong maximal flag");
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace io_detail {

/// Fixed-point text with two decimals, rounding half away from zero.
inline std::string decimal(const Rational& q)
{
    Rational scaled = q * 100;
    Integer num = numerator(scaled), den = denominator(scaled);
    Integer twice = (2 * abs(num) + den) / (2 * den);
    if (num.sign() < 0)
        twice = -twice;
    Integer whole = abs(twice) / 100, frac = abs(twice) % 100;
    std::string f = frac.str();
    if (f.size() < 2)
        f = "0" + f;
    return (twice.sign() < 0 ? "-" : "") + whole.str() + "." + f;
}

inline std::pair<Rational, Rational> place(const std::vector<Rational>& p)
{
    if (p.size() == 2)
        return {Rational(20) + 360 * p[1], Rational(200)};
    // corners of the simplex: first edge bottom left, second bottom right, third on top
    return {20 * p[0] + 380 * p[1] + 200 * p[2], 370 * p[0] + 370 * p[1] + 58 * p[2]};
}

inline std::string xml_escape(const std::string& s)
{
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

} // namespace io_detail

/// Maximal cells only: rays as circles (class "ray"), 2-cones as segments
/// (class "cell"), 3-cones as polygons (class "cell"). The slice outline has
/// class "outline". Hover titles give the witness flows.
inline std::string render_slice_svg(const Slice& s, const std::vector<Json>& edge_order)
{
    using io_detail::decimal;
    using io_detail::place;
    if (s.ambient_dim != 2 && s.ambient_dim != 3)
        throw Error(ErrorKind::UnsupportedDimension, "ambient dimension " + std::to_string(s.ambient_dim));

    auto title = [&](const SliceCell& c) {
        std::string t;
        if (c.witness_flows) {
            t = "flows";
            for (std::size_t e = 0; e < c.witness_flows->size(); ++e)
                t += " " + label_text(edge_order[e]) + "=" + (*c.witness_flows)[e].str();
        }
        return "<title>" + io_detail::xml_escape(t) + "</title>";
    };
    auto point_list = [&](const std::vector<std::vector<Rational>>& pts) {
        std::string o;
        for (const auto& p : pts) {
            auto [x, y] = place(p);
            o += (o.empty() ? "" : " ") + decimal(x) + "," + decimal(y);
        }
        return o;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" height=\"400\">\n";
    out << "<style>.outline{fill:none;stroke:#999;stroke-width:1}.cell{fill:#cde;stroke:#246;stroke-width:2}"
           ".ray{fill:#c33}</style>\n";
    if (s.ambient_dim == 2)
        out << "<line class=\"outline\" x1=\"20.00\" y1=\"200.00\" x2=\"380.00\" y2=\"200.00\"/>\n";
    else
        out << "<polygon class=\"outline\" points=\"20.00,370.00 380.00,370.00 200.00,58.00\"/>\n";

    for (const auto& c : s.cells) {
        if (!c.maximal)
            continue;
        if (c.dim == 0) {
            auto [x, y] = place(c.points[0]);
            out << "<circle class=\"ray\" cx=\"" << decimal(x) << "\" cy=\"" << decimal(y) << "\" r=\"3\">"
                << title(c) << "</circle>\n";
        } else if (c.dim == 1) {
            auto [x1, y1] = place(c.points[0]);
            auto [x2, y2] = place(c.points[1]);
            out << "<line class=\"cell\" x1=\"" << decimal(x1) << "\" y1=\"" << decimal(y1) << "\" x2=\""
                << decimal(x2) << "\" y2=\"" << decimal(y2) << "\">" << title(c) << "</line>\n";
        } else {
            out << "<polygon class=\"cell\" points=\"" << point_list(c.points) << "\">" << title(c) << "</polygon>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace drfan
