#ifndef NLPAGE_IO_HPP
#define NLPAGE_IO_HPP

#include <string>

#include "nlpage/lp.hpp"
#include "nlpage/types.hpp"

namespace nlpage {

/*
 * File formats.
 *
 * Instance: JSON object
 *   {"pages": [names], "costs": [ints], "k": int,
 *    "spec": {"kind": ..., "payload": {...}},
 *    "unremovable": [names]}            // optional; implied for element
 *                                       // pages of set_cover_derived
 * Payloads:
 *   cardinality        {}
 *   linear             {"sizes": [ints]}
 *   shared_atoms       {"atoms": [names], "page_atoms": [[atom names]]}
 *   hypergraph         {"hyperedges": [[page names]]}
 *   set_cover_derived  {"elements": [names], "set_pages": {page: [elements]},
 *                       "element_pages": {page: element}}
 *   explicit_table     {"values": [ints]}   // index = little-endian bitmask
 *                                           // by page order (normative)
 *
 * Trace: JSON array of page names.
 *
 * Solution dump: {"lp": kind, "x": [[page, j, value]],
 *                 "y": [[t, subset, amount]]} where subset is the
 * little-endian bitmask as an integer for n <= 64 and a hex string beyond.
 */

Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

RequestTrace parse_trace(const std::string& json_text, const Instance& inst);
std::string trace_to_json(const RequestTrace& trace, const Instance& inst);
RequestTrace load_trace(const std::string& path, const Instance& inst);
void save_trace(const std::string& path, const RequestTrace& trace, const Instance& inst);

struct SolutionDump {
    LpKind kind = LpKind::relax;
    PrimalVector<double> x;
    DualLedger<double> ledger;
};

std::string solution_to_json(const SolutionDump& dump, const Instance& inst);
SolutionDump parse_solution(const std::string& json_text, const Instance& inst);
void save_solution(const std::string& path, const SolutionDump& dump, const Instance& inst);
SolutionDump load_solution(const std::string& path, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nlpage

#endif
