#include "insys/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace insys {

const char* const kToolVersion = "insys 1.0.0";

std::string format_time(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", t);
  return buf;
}

namespace {

std::string format_conc(double c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

std::string pair_text(Symbol a, Symbol b) {
  return "(" + symbol_name(a) + "," + symbol_name(b) + ")";
}

std::vector<std::string> split_csv_parens(const std::string& tok, int line,
                                          std::size_t expect) {
  if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
    throw SystemParseError(line, "expected (sym,...) but got '" + tok + "'");
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : tok.substr(1, tok.size() - 2)) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != expect)
    throw SystemParseError(line, "expected " + std::to_string(expect) +
                                     " symbols in '" + tok + "'");
  return parts;
}

Symbol parse_symbol_at(const std::string& text, int line) {
  try {
    return parse_symbol(text);
  } catch (const std::invalid_argument& e) {
    throw SystemParseError(line, e.what());
  }
}

}  // namespace

std::string serialize_system(const InsertionSystem& sys) {
  std::string out;
  out += "symbols " + std::to_string(sys.symbol_count()) + "\n";
  out += "initiator " + pair_text(sys.initiator().qa, sys.initiator().qb) + " " +
         pair_text(sys.initiator().rc, sys.initiator().rd) + "\n";
  for (const MonomerType& m : sys.monomers()) {
    out += "monomer (" + symbol_name(m.quad[0]) + "," + symbol_name(m.quad[1]) +
           "," + symbol_name(m.quad[2]) + "," + symbol_name(m.quad[3]) + ") " +
           (m.sign == Sign::positive ? "+" : "-") +
           " conc=" + format_conc(m.concentration) + "\n";
  }
  return out;
}

InsertionSystem parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  bool have_symbols = false, have_initiator = false;
  std::int32_t symbol_count = 0;
  Initiator init{};
  std::vector<MonomerType> monomers;
  std::vector<int> monomer_lines;
  int initiator_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "symbols") {
      if (tok.size() != 2) throw SystemParseError(line_no, "symbols <N>");
      try {
        symbol_count = std::stoi(tok[1]);
      } catch (...) {
        throw SystemParseError(line_no, "bad symbol count '" + tok[1] + "'");
      }
      have_symbols = true;
    } else if (tok[0] == "initiator") {
      if (tok.size() != 3)
        throw SystemParseError(line_no, "initiator (a,b) (c,d)");
      auto q = split_csv_parens(tok[1], line_no, 2);
      auto r = split_csv_parens(tok[2], line_no, 2);
      init.qa = parse_symbol_at(q[0], line_no);
      init.qb = parse_symbol_at(q[1], line_no);
      init.rc = parse_symbol_at(r[0], line_no);
      init.rd = parse_symbol_at(r[1], line_no);
      have_initiator = true;
      initiator_line = line_no;
    } else if (tok[0] == "monomer") {
      if (tok.size() != 4 || (tok[2] != "+" && tok[2] != "-") ||
          tok[3].rfind("conc=", 0) != 0)
        throw SystemParseError(line_no, "monomer (a,b,c,d) <+|-> conc=<value>");
      auto quad = split_csv_parens(tok[1], line_no, 4);
      double conc;
      try {
        conc = std::stod(tok[3].substr(5));
      } catch (...) {
        throw SystemParseError(line_no, "bad concentration '" + tok[3] + "'");
      }
      MonomerType m = make_monomer(
          parse_symbol_at(quad[0], line_no), parse_symbol_at(quad[1], line_no),
          parse_symbol_at(quad[2], line_no), parse_symbol_at(quad[3], line_no),
          tok[2] == "+" ? Sign::positive : Sign::negative, conc);
      monomers.push_back(m);
      monomer_lines.push_back(line_no);
    } else {
      throw SystemParseError(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_symbols) throw SystemParseError(line_no, "missing `symbols` line");
  if (!have_initiator) throw SystemParseError(line_no, "missing `initiator` line");

  InsertionSystem sys(symbol_count, std::move(monomers), init);
  ValidationReport report = sys.validate();
  if (!report.ok()) {
    // Attribute the failure to a concrete line where possible.
    const ValidationIssue& issue = report.issues.front();
    int at = initiator_line;
    if (issue.code == "concentration-sum" && !monomer_lines.empty())
      at = monomer_lines.back();
    if (issue.code == "concentration-positive" || issue.code == "symbol-range") {
      // The message names the monomer id, which indexes monomer_lines.
      for (std::size_t i = 0; i < sys.monomers().size(); ++i)
        if (issue.message.find("monomer " + std::to_string(i)) != std::string::npos)
          at = monomer_lines[i];
    }
    throw SystemParseError(at, "validation failed: " + issue.message);
  }
  return sys;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "event,time,site_index,monomer_id\n";
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    out += std::to_string(i) + "," + format_time(e.time) + "," +
           std::to_string(e.site_index) + "," + std::to_string(e.monomer_id) +
           "\n";
  }
  return out;
}

std::string stats_csv_header() {
  return "system,target,trials,reached_target,mean,variance,median,q05,q25,q75,"
         "q95,min,max,completion_lengths\n";
}

std::string stats_csv_row(const std::string& system_name, const std::string& target,
                          const TrialStats& stats) {
  std::string hist;
  for (const auto& [len, count] : stats.completion_lengths) {
    if (!hist.empty()) hist += ';';
    hist += std::to_string(len) + ":" + std::to_string(count);
  }
  std::string out = system_name + "," + target + "," + std::to_string(stats.n) +
                    "," + std::to_string(stats.reached_target);
  for (double v : {stats.mean, stats.variance, stats.median, stats.q05, stats.q25,
                   stats.q75, stats.q95, stats.min_time, stats.max_time})
    out += "," + format_time(v);
  out += "," + hist + "\n";
  return out;
}

std::string analysis_csv(const std::vector<SequenceReport>& reports) {
  std::string out =
      "kind,trace,lineage,positive,mixed,negative,max_nonpositive_run,"
      "repeated_sites\n";
  std::size_t pos = 0, mix = 0, neg = 0;
  for (const SequenceReport& r : reports) {
    pos += r.positive_count;
    mix += r.mixed_count;
    neg += r.negative_count;
  }
  out += "totals,,," + std::to_string(pos) + "," + std::to_string(mix) + "," +
         std::to_string(neg) + ",,\n";
  for (std::size_t t = 0; t < reports.size(); ++t) {
    for (std::size_t l = 0; l < reports[t].lineages.size(); ++l) {
      const LineageStats& ls = reports[t].lineages[l];
      out += "lineage," + std::to_string(t) + "," + std::to_string(l) + ",,,," +
             std::to_string(ls.max_nonpositive_run) + "," +
             (ls.repeated_sites ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const std::string& command,
                          const std::vector<std::string>& arguments,
                          std::uint64_t master_seed,
                          const std::vector<std::pair<std::string, std::string>>&
                              input_hashes) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["arguments"] = arguments;
  j["master_seed"] = std::to_string(master_seed);
  j["tool_version"] = kToolVersion;
  nlohmann::ordered_json hashes = nlohmann::ordered_json::object();
  for (const auto& [path, hash] : input_hashes) hashes[path] = hash;
  j["input_hashes"] = hashes;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace insys
