#ifndef INSYS_IO_HPP
#define INSYS_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "insys/analyzer.hpp"
#include "insys/kinetics.hpp"
#include "insys/model.hpp"

namespace insys {

class SystemParseError : public std::runtime_error {
 public:
  SystemParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line(line) {}
  int line;
};

/// Line-oriented system text:
///   symbols <N>
///   initiator (<sym>,<sym>) (<sym>,<sym>)
///   monomer (<sym>,<sym>,<sym>,<sym>) <+|-> conc=<decimal>
/// Symbols are s<k> or s<k>*; `#` starts a comment. parse(serialize(sys))
/// reproduces sys exactly.
std::string serialize_system(const InsertionSystem& sys);
InsertionSystem parse_system(const std::string& text);

/// Trace CSV: header event,time,site_index,monomer_id; time with 9 decimals.
std::string trace_csv(const Trace& trace);

/// Stats CSV: one row per (system, target, nTrials).
std::string stats_csv_header();
std::string stats_csv_row(const std::string& system_name, const std::string& target,
                          const TrialStats& stats);

/// Analysis CSV: one totals row, then one row per lineage.
std::string analysis_csv(const std::vector<SequenceReport>& reports);

/// 64-bit FNV-1a of a byte string, as "fnv1a64:<hex>".
std::string content_hash(const std::string& bytes);

/// Run manifest: command, arguments, master seed, tool version, input hashes.
std::string manifest_json(const std::string& command,
                          const std::vector<std::string>& arguments,
                          std::uint64_t master_seed,
                          const std::vector<std::pair<std::string, std::string>>&
                              input_hashes);

extern const char* const kToolVersion;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Fixed-point with 9 decimals (trace/stats time format).
std::string format_time(double t);

}  // namespace insys

#endif
