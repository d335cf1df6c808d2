#include "nlpage/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlpage/errors.hpp"

namespace nlpage {

using nlohmann::json;

namespace {

json parse_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error(std::string("malformed JSON in ") + what);
    return j;
}

const json& need(const json& j, const char* field, const char* ctx) {
    auto it = j.find(field);
    if (it == j.end()) throw input_error(std::string(ctx) + ": missing field '" + field + "'");
    return *it;
}

json set_to_json(const PageSet& s, uint32_t n) {
    if (n <= 64) return json(s.to_mask());
    return json(s.to_hex());
}

PageSet set_from_json(const json& j, uint32_t n) {
    if (j.is_string()) return PageSet::from_hex(j.get<std::string>(), n);
    return PageSet::from_mask(j.get<uint64_t>(), n);
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << content;
}

Instance parse_instance(const std::string& text) {
    json j = parse_text(text, "instance");
    Instance inst;
    for (const auto& name : need(j, "pages", "instance")) inst.page_names.push_back(name.get<std::string>());
    const uint32_t n = inst.n();
    for (const auto& c : need(j, "costs", "instance")) inst.costs.push_back(Cost{c.get<int64_t>(), false});
    inst.k = need(j, "k", "instance").get<int64_t>();

    const json& spec = need(j, "spec", "instance");
    std::string kind = need(spec, "kind", "spec").get<std::string>();
    json payload = spec.value("payload", json::object());

    auto page_id = [&](const std::string& name) { return inst.id_of(name); };

    if (kind == "cardinality") {
        inst.spec = CardinalitySpec{};
    } else if (kind == "linear") {
        LinearSpec lin;
        for (const auto& s : need(payload, "sizes", "linear payload")) lin.sizes.push_back(s.get<int64_t>());
        inst.spec = lin;
    } else if (kind == "shared_atoms") {
        SharedAtomsSpec sa;
        std::vector<std::string> atom_names;
        for (const auto& a : need(payload, "atoms", "shared_atoms payload"))
            atom_names.push_back(a.get<std::string>());
        sa.atom_count = uint32_t(atom_names.size());
        auto atom_id = [&](const std::string& name) {
            for (uint32_t i = 0; i < atom_names.size(); ++i)
                if (atom_names[i] == name) return i;
            throw input_error("unknown atom name: " + name);
        };
        for (const auto& page : need(payload, "page_atoms", "shared_atoms payload")) {
            sa.page_atoms.emplace_back();
            for (const auto& a : page) sa.page_atoms.back().push_back(atom_id(a.get<std::string>()));
        }
        inst.spec = sa;
    } else if (kind == "hypergraph") {
        HypergraphSpec hg;
        hg.page_count = n;
        for (const auto& edge : need(payload, "hyperedges", "hypergraph payload")) {
            hg.edges.emplace_back();
            for (const auto& v : edge) hg.edges.back().push_back(page_id(v.get<std::string>()));
        }
        inst.spec = hg;
    } else if (kind == "set_cover_derived") {
        SetCoverDerivedSpec sc;
        std::vector<std::string> element_names;
        for (const auto& e : need(payload, "elements", "set_cover payload"))
            element_names.push_back(e.get<std::string>());
        sc.element_count = uint32_t(element_names.size());
        auto element_id = [&](const std::string& name) {
            for (uint32_t i = 0; i < element_names.size(); ++i)
                if (element_names[i] == name) return i;
            throw input_error("unknown element name: " + name);
        };
        sc.roles.resize(n);
        std::vector<bool> assigned(n, false);
        for (const auto& [page, elems] : need(payload, "set_pages", "set_cover payload").items()) {
            PageId p = page_id(page);
            assigned[p] = true;
            sc.roles[p].is_element = false;
            for (const auto& e : elems) sc.roles[p].covers.push_back(element_id(e.get<std::string>()));
        }
        for (const auto& [page, elem] : need(payload, "element_pages", "set_cover payload").items()) {
            PageId p = page_id(page);
            if (assigned[p]) throw input_error("page is both set page and element page: " + page);
            assigned[p] = true;
            sc.roles[p].is_element = true;
            sc.roles[p].element = element_id(elem.get<std::string>());
            inst.costs[p].unremovable = true;  // element pages model infinite cost
        }
        for (PageId p = 0; p < n; ++p)
            if (!assigned[p]) throw input_error("page has no set/element role: " + inst.page_names[p]);
        inst.spec = sc;
    } else if (kind == "explicit_table") {
        ExplicitTableSpec tb;
        tb.page_count = n;
        for (const auto& v : need(payload, "values", "explicit_table payload"))
            tb.values.push_back(v.get<int64_t>());
        inst.spec = tb;
    } else {
        throw input_error("unknown spec kind: " + kind);
    }

    if (j.contains("unremovable"))
        for (const auto& name : j["unremovable"]) inst.costs[page_id(name.get<std::string>())].unremovable = true;

    inst.validate();
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["pages"] = inst.page_names;
    json costs = json::array();
    json unremovable = json::array();
    for (PageId p = 0; p < inst.n(); ++p) {
        costs.push_back(inst.costs[p].value);
        if (!inst.removable(p)) unremovable.push_back(inst.page_names[p]);
    }
    j["costs"] = costs;
    j["k"] = inst.k;

    json spec;
    spec["kind"] = spec_kind_name(inst.spec);
    json payload = json::object();
    if (const auto* lin = std::get_if<LinearSpec>(&inst.spec)) {
        payload["sizes"] = lin->sizes;
    } else if (const auto* sa = std::get_if<SharedAtomsSpec>(&inst.spec)) {
        json atoms = json::array();
        for (uint32_t a = 0; a < sa->atom_count; ++a) atoms.push_back("a" + std::to_string(a + 1));
        payload["atoms"] = atoms;
        json pa = json::array();
        for (const auto& list : sa->page_atoms) {
            json one = json::array();
            for (uint32_t a : list) one.push_back("a" + std::to_string(a + 1));
            pa.push_back(one);
        }
        payload["page_atoms"] = pa;
    } else if (const auto* hg = std::get_if<HypergraphSpec>(&inst.spec)) {
        json edges = json::array();
        for (const auto& edge : hg->edges) {
            json one = json::array();
            for (PageId v : edge) one.push_back(inst.page_names[v]);
            edges.push_back(one);
        }
        payload["hyperedges"] = edges;
    } else if (const auto* sc = std::get_if<SetCoverDerivedSpec>(&inst.spec)) {
        json elements = json::array();
        for (uint32_t e = 0; e < sc->element_count; ++e) elements.push_back("x" + std::to_string(e + 1));
        payload["elements"] = elements;
        json set_pages = json::object(), element_pages = json::object();
        for (PageId p = 0; p < inst.n(); ++p) {
            if (sc->roles[p].is_element) {
                element_pages[inst.page_names[p]] = "x" + std::to_string(sc->roles[p].element + 1);
            } else {
                json covers = json::array();
                for (uint32_t e : sc->roles[p].covers) covers.push_back("x" + std::to_string(e + 1));
                set_pages[inst.page_names[p]] = covers;
            }
        }
        payload["set_pages"] = set_pages;
        payload["element_pages"] = element_pages;
    } else if (const auto* tb = std::get_if<ExplicitTableSpec>(&inst.spec)) {
        payload["values"] = tb->values;
    }
    spec["payload"] = payload;
    j["spec"] = spec;
    if (!unremovable.empty()) j["unremovable"] = unremovable;
    return j.dump(2) + "\n";
}

RequestTrace parse_trace(const std::string& text, const Instance& inst) {
    json j = parse_text(text, "trace");
    if (!j.is_array()) throw input_error("trace must be a JSON array of page names");
    RequestTrace trace;
    for (const auto& name : j) trace.requests.push_back(inst.id_of(name.get<std::string>()));
    if (trace.requests.empty()) throw input_error("trace is empty");
    return trace;
}

std::string trace_to_json(const RequestTrace& trace, const Instance& inst) {
    json j = json::array();
    for (PageId p : trace.requests) j.push_back(inst.page_names[p]);
    return j.dump() + "\n";
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }
void save_instance(const std::string& path, const Instance& inst) { write_file(path, instance_to_json(inst)); }
RequestTrace load_trace(const std::string& path, const Instance& inst) {
    return parse_trace(read_file(path), inst);
}
void save_trace(const std::string& path, const RequestTrace& trace, const Instance& inst) {
    write_file(path, trace_to_json(trace, inst));
}

std::string solution_to_json(const SolutionDump& dump, const Instance& inst) {
    json j;
    j["lp"] = lp_kind_name(dump.kind);
    json x = json::array();
    for (const auto& [key, v] : dump.x.entries()) x.push_back({key.first, key.second, v});
    j["x"] = x;
    json y = json::array();
    for (const auto& e : dump.ledger.entries) y.push_back({e.t, set_to_json(e.set, inst.n()), e.amount});
    j["y"] = y;
    return j.dump(2) + "\n";
}

SolutionDump parse_solution(const std::string& text, const Instance& inst) {
    json j = parse_text(text, "solution");
    SolutionDump dump;
    dump.kind = lp_kind_from_name(need(j, "lp", "solution").get<std::string>());
    dump.ledger.kind = dump.kind;
    for (const auto& row : need(j, "x", "solution")) {
        if (!row.is_array() || row.size() != 3) throw input_error("solution x rows are [page, j, value]");
        dump.x.set(row[0].get<PageId>(), row[1].get<uint32_t>(), row[2].get<double>());
    }
    for (const auto& row : need(j, "y", "solution")) {
        if (!row.is_array() || row.size() != 3) throw input_error("solution y rows are [t, subset, amount]");
        DualEntry<double> e;
        e.t = row[0].get<uint32_t>();
        e.set = set_from_json(row[1], inst.n());
        e.amount = row[2].get<double>();
        dump.ledger.entries.push_back(e);
    }
    return dump;
}

void save_solution(const std::string& path, const SolutionDump& dump, const Instance& inst) {
    write_file(path, solution_to_json(dump, inst));
}
SolutionDump load_solution(const std::string& path, const Instance& inst) {
    return parse_solution(read_file(path), inst);
}

}  // namespace nlpage
