// output.hpp — deterministic text output: number formatting, CSV rows, sinks
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rabicli {

// Shortest round-trip decimal form, locale-independent, so identical runs
// produce byte-identical artifacts.
std::string fmt_double(double value);

// One CSV cell: numbers via fmt_double, absent values as empty cells.
struct Cell {
  std::string text;

  Cell(const char* s) : text(s) {}
  Cell(const std::string& s) : text(s) {}
  Cell(double v) : text(fmt_double(v)) {}
  Cell(std::size_t v) : text(std::to_string(v)) {}
  Cell(int v) : text(std::to_string(v)) {}
  Cell(std::optional<double> v) : text(v ? fmt_double(*v) : std::string()) {}
};

void write_csv_row(std::ostream& os, const std::vector<Cell>& cells);

// Destination for a command's artifact: "-" means standard output, anything
// else is created/truncated. Lines always end in \n.
class Sink {
 public:
  explicit Sink(const std::string& path);
  ~Sink();

  Sink(const Sink&) = delete;
  Sink& operator=(const Sink&) = delete;

  std::ostream& stream();
  bool is_stdout() const { return path_ == "-"; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ostream* os_;
  void* file_;  // std::ofstream when writing to a path
};

}  // namespace rabicli
