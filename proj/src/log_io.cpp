#include "zest/log_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace zest {

namespace {

constexpr const char* kHeader = "t,wx,wy,wpsi,wu,wr,rx,ry,rpsi,ru,rr,leaf,encounter,tl,tr,sep,xte";

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("bad csv number in column ") + what);
  }
  return v;
}

EncounterType encounter_from_string(std::string_view s) {
  for (EncounterType e : {EncounterType::Clear, EncounterType::StaticObstacle,
                          EncounterType::Overtaking, EncounterType::HeadOn,
                          EncounterType::CrossingGiveWay, EncounterType::StandOn}) {
    if (s == to_string(e)) return e;
  }
  throw std::runtime_error("bad csv encounter value '" + std::string(s) + "'");
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string log_to_csv(const SimLog& log) {
  std::string out = kHeader;
  out += '\n';
  for (const SimRecord& rec : log.records) {
    out += format_double(rec.t);
    out += ',';
    out += format_double(rec.white.x);
    out += ',';
    out += format_double(rec.white.y);
    out += ',';
    out += format_double(rec.white.psi);
    out += ',';
    out += format_double(rec.white.u);
    out += ',';
    out += format_double(rec.white.r);
    out += ',';
    if (rec.red.has_value()) {
      out += format_double(rec.red->x);
      out += ',';
      out += format_double(rec.red->y);
      out += ',';
      out += format_double(rec.red->psi);
      out += ',';
      out += format_double(rec.red->u);
      out += ',';
      out += format_double(rec.red->r);
      out += ',';
    } else {
      out += ",,,,,";
    }
    out += rec.leaf;
    out += ',';
    out += to_string(rec.encounter);
    out += ',';
    out += format_double(rec.t_left);
    out += ',';
    out += format_double(rec.t_right);
    out += ',';
    if (rec.separation.has_value()) {
      out += format_double(*rec.separation);
    }
    out += ',';
    out += format_double(rec.cross_track);
    out += '\n';
  }
  return out;
}

void write_log_csv(const SimLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << log_to_csv(log);
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

SimLog parse_log_csv(const std::string& text) {
  SimLog log;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (first) {
      if (line != kHeader) {
        throw std::runtime_error("bad csv header");
      }
      first = false;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 17) {
      throw std::runtime_error("bad csv row: expected 17 fields");
    }
    SimRecord rec;
    rec.t = parse_double(fields[0], "t");
    rec.white.x = parse_double(fields[1], "wx");
    rec.white.y = parse_double(fields[2], "wy");
    rec.white.psi = parse_double(fields[3], "wpsi");
    rec.white.u = parse_double(fields[4], "wu");
    rec.white.r = parse_double(fields[5], "wr");
    rec.white.t = rec.t;
    if (!fields[6].empty()) {
      VesselState red;
      red.x = parse_double(fields[6], "rx");
      red.y = parse_double(fields[7], "ry");
      red.psi = parse_double(fields[8], "rpsi");
      red.u = parse_double(fields[9], "ru");
      red.r = parse_double(fields[10], "rr");
      red.t = rec.t;
      rec.red = red;
    }
    rec.leaf = std::string(fields[11]);
    rec.encounter = encounter_from_string(fields[12]);
    rec.t_left = parse_double(fields[13], "tl");
    rec.t_right = parse_double(fields[14], "tr");
    if (!fields[15].empty()) {
      rec.separation = parse_double(fields[15], "sep");
    }
    rec.cross_track = parse_double(fields[16], "xte");
    log.records.push_back(std::move(rec));
  }
  return log;
}

SimLog read_log_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_log_csv(text);
}

}  // namespace zest
