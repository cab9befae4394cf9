// output.cpp
#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace rabicli {

std::string fmt_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // %.17g always round-trips; prefer the shortest precision that does so the
  // common values stay readable (0.5 rather than 0.50000000000000000).
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

void write_csv_row(std::ostream& os, const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i].text;
  }
  os << '\n';
}

Sink::Sink(const std::string& path) : path_(path), os_(nullptr), file_(nullptr) {
  if (path_ == "-") {
    os_ = &std::cout;
  } else {
    auto* f = new std::ofstream(path_, std::ios::binary | std::ios::trunc);
    if (!*f) {
      delete f;
      throw std::runtime_error("cannot open output file '" + path_ + "'");
    }
    file_ = f;
    os_ = f;
  }
}

Sink::~Sink() {
  if (file_) {
    delete static_cast<std::ofstream*>(file_);
  } else if (os_) {
    os_->flush();
  }
}

std::ostream& Sink::stream() { return *os_; }

}  // namespace rabicli
