#include "peersplit/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace peersplit {

namespace {

using nlohmann::json;

json run_record_json(const RunRecord& rec) {
  json j;
  j["point_id"] = rec.point_id;
  j["s"] = rec.s;
  j["rho"] = rec.rho;
  j["n"] = rec.n;
  j["r"] = rec.r;
  j["k"] = rec.k;
  j["run"] = rec.run;
  j["seed"] = rec.seed;
  j["strategy"] = strategy_name(rec.strategy);
  j["target"] = rec.target ? json(*rec.target) : json(nullptr);
  j["L"] = rec.l ? json(*rec.l) : json(nullptr);
  j["success"] = rec.success;
  j["damage"] = rec.damage;
  j["cost"] = rec.cost;
  j["efficiency"] = rec.efficiency;
  j["frontier_size"] = rec.frontier_size;
  return j;
}

json aggregate_row_json(const AggregateRow& row) {
  json j;
  j["point_id"] = row.point_id;
  j["s"] = row.s;
  j["rho"] = row.rho;
  j["strategy"] = strategy_name(row.strategy);
  j["L"] = row.l ? json(*row.l) : json(nullptr);
  j["runs"] = row.runs;
  j["p"] = row.p;
  j["mean_eff"] = row.mean_eff;
  j["std_eff"] = row.std_eff;
  j["ci95"] = row.ci95;
  j["mean_damage"] = row.mean_damage;
  j["mean_cost"] = row.mean_cost;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string per_run_csv(const std::vector<RunRecord>& rows) {
  std::ostringstream os;
  os << "point_id,s,rho,n,r,k,run,seed,strategy,target,L,success,damage,cost,efficiency,"
        "frontier_size\n";
  for (const RunRecord& rec : rows) {
    os << rec.point_id << ',' << format_double(rec.s) << ',' << format_double(rec.rho) << ','
       << rec.n << ',' << rec.r << ',' << rec.k << ',' << rec.run << ',' << rec.seed << ','
       << strategy_name(rec.strategy) << ',';
    if (rec.target) os << *rec.target;
    os << ',';
    if (rec.l) os << *rec.l;
    os << ',' << (rec.success ? 1 : 0) << ',' << format_double(rec.damage) << ','
       << format_double(rec.cost) << ',' << format_double(rec.efficiency) << ','
       << rec.frontier_size << '\n';
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "point_id,s,rho,strategy,L,runs,p,mean_eff,std_eff,ci95,mean_damage,mean_cost\n";
  for (const AggregateRow& row : rows) {
    os << row.point_id << ',' << format_double(row.s) << ',' << format_double(row.rho) << ','
       << strategy_name(row.strategy) << ',';
    if (row.l) os << *row.l;
    os << ',' << row.runs << ',' << format_double(row.p) << ',' << format_double(row.mean_eff)
       << ',' << format_double(row.std_eff) << ',' << format_double(row.ci95) << ','
       << format_double(row.mean_damage) << ',' << format_double(row.mean_cost) << '\n';
  }
  return os.str();
}

std::string histogram_csv(const FrequencyHistogram& hist) {
  std::ostringstream os;
  os << "rank,count\n";
  for (std::size_t rank = 1; rank <= hist.counts.size(); ++rank) {
    os << rank << ',' << hist.counts[rank - 1] << '\n';
  }
  return os.str();
}

std::string heatmap_csv(const Heatmap& hm) {
  std::ostringstream os;
  os << "s,rho,value,target\n";
  for (std::size_t si = 0; si < hm.s_grid.size(); ++si) {
    for (std::size_t ri = 0; ri < hm.rho_grid.size(); ++ri) {
      os << format_double(hm.s_grid[si]) << ',' << format_double(hm.rho_grid[ri]) << ','
         << format_double(hm.cells[si][ri]) << ',';
      if (!hm.targets.empty() && hm.targets[si][ri] != 0) os << hm.targets[si][ri];
      os << '\n';
    }
  }
  return os.str();
}

std::string per_run_json(const std::vector<RunRecord>& rows) {
  json arr = json::array();
  for (const RunRecord& rec : rows) arr.push_back(run_record_json(rec));
  return arr.dump(2) + "\n";
}

std::string aggregate_json(const std::vector<AggregateRow>& rows) {
  json arr = json::array();
  for (const AggregateRow& row : rows) arr.push_back(aggregate_row_json(row));
  return arr.dump(2) + "\n";
}

std::string histogram_json(const FrequencyHistogram& hist) {
  json arr = json::array();
  for (std::size_t rank = 1; rank <= hist.counts.size(); ++rank) {
    json j;
    j["rank"] = rank;
    j["count"] = hist.counts[rank - 1];
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string heatmap_json(const Heatmap& hm) {
  json arr = json::array();
  for (std::size_t si = 0; si < hm.s_grid.size(); ++si) {
    for (std::size_t ri = 0; ri < hm.rho_grid.size(); ++ri) {
      json j;
      j["s"] = hm.s_grid[si];
      j["rho"] = hm.rho_grid[ri];
      const double v = hm.cells[si][ri];
      j["value"] = std::isfinite(v) ? json(v) : json(nullptr);
      if (!hm.targets.empty() && hm.targets[si][ri] != 0) {
        j["target"] = hm.targets[si][ri];
      } else {
        j["target"] = nullptr;
      }
      arr.push_back(j);
    }
  }
  return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory " + p.parent_path().string() + ": " +
                               ec.message());
    }
  }
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace peersplit
