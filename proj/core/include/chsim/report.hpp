#pragma once

#include <string>

#include "chsim/objectives.hpp"
#include "chsim/simulation.hpp"
#include "chsim/sweep.hpp"

namespace chsim {

enum class ReportFormat { Csv, Json };

ReportFormat report_format_from_string(const std::string& name);

// Writes via a temp file plus rename so failures leave nothing behind.
void write_text_atomically(const std::string& path, const std::string& content);

// Per-round trace, one row per round:
// round,energy_j,alive,bits,delay_ms,formation_ms,ch_ids
std::string render_round_trace_csv(const RunSummary& summary);

std::string render_run_summary_json(const RunSummary& summary,
                                    SelectorKind selector, std::uint64_t seed);
std::string render_run_summary_csv(const RunSummary& summary,
                                   SelectorKind selector, std::uint64_t seed);

// Per-cell rows and per-(value, selector) aggregates; numbers carry six
// significant digits and rows keep (value, selector, seed) order.
std::string render_sweep_rows_csv(const SweepResult& result);
std::string render_sweep_summary_csv(const SweepResult& result);
std::string render_sweep_json(const SweepResult& result);

std::string render_comparison_csv(const SelectorComparison& comparison,
                                  const std::vector<SelectorKind>& selectors);
std::string render_comparison_json(const SelectorComparison& comparison,
                                   const std::vector<SelectorKind>& selectors);

// node_id,E_C,Com_c,D_Que,LQ,N_c,fitness
std::string render_objective_table_csv(const ObjectiveTable& table);

std::string render_solution_trace_csv(const Solution& solution);

}  // namespace chsim
