#pragma once

#include <string>

#include "zest/simulator.hpp"

namespace zest {

// CSV rendering of a log, columns exactly:
//   t,wx,wy,wpsi,wu,wr,rx,ry,rpsi,ru,rr,leaf,encounter,tl,tr,sep,xte
// Numbers use shortest round-trip formatting; red columns and sep are empty
// fields when the scenario has no red vessel.
std::string log_to_csv(const SimLog& log);

void write_log_csv(const SimLog& log, const std::string& path);

// Inverse of log_to_csv; numeric fields are recovered bit-exactly.
SimLog parse_log_csv(const std::string& text);

SimLog read_log_csv(const std::string& path);

}  // namespace zest
