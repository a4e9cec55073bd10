#include "wsmf/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsmf/error.hpp"

namespace wsmf {
namespace {

static_assert(std::endian::native == std::endian::little, "RAW IO assumes a little-endian host");

constexpr std::array<char, 4> kMagic = {'W', 'S', 'M', 'F'};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::vector<Signal> select(std::vector<Signal> all, const std::vector<std::size_t>& channels) {
  if (channels.empty()) return all;
  std::vector<Signal> out;
  for (std::size_t c : channels) {
    if (c >= all.size()) {
      throw Error(Errc::ChannelOutOfRange,
                  "channel " + std::to_string(c) + " requested, input has " + std::to_string(all.size()));
    }
    out.push_back(all[c]);
  }
  return out;
}

template <typename T>
T read_le(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(Errc::ParseError, "truncated RAW header");
  return v;
}

std::size_t common_length(const std::vector<Signal>& signals) {
  if (signals.empty()) return 0;
  for (const auto& s : signals) {
    if (s.length() != signals.front().length()) throw Error(Errc::LengthMismatch, "channels differ in length");
  }
  return signals.front().length();
}

}  // namespace

InputFormat parse_input_format(const std::string& name) {
  if (name == "csv") return InputFormat::Csv;
  if (name == "raw") return InputFormat::Raw;
  if (name == "auto" || name.empty()) return InputFormat::Auto;
  throw Error(Errc::ConfigError, "unknown format '" + name + "' (csv, raw, auto)");
}

std::vector<Signal> read_csv(std::istream& in, const std::vector<std::size_t>& channels) {
  std::vector<Signal> signals;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (first) {
      first = false;
      signals.resize(cells.size());
      bool header = false;
      double v = 0.0;
      for (const auto& c : cells) header = header || !parse_number(c, v);
      if (header) {
        for (std::size_t i = 0; i < cells.size(); ++i) signals[i].label = cells[i];
        continue;
      }
      for (std::size_t i = 0; i < cells.size(); ++i) signals[i].label = "ch" + std::to_string(i);
    }
    if (cells.size() != signals.size()) {
      throw Error(Errc::LengthMismatch, "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                            " columns, expected " + std::to_string(signals.size()));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      if (!parse_number(cells[i], v) || !std::isfinite(v)) {
        throw Error(Errc::ParseError, "row " + std::to_string(row) + ", column " + std::to_string(i + 1) +
                                          ": '" + cells[i] + "' is not a finite number");
      }
      signals[i].samples.push_back(v);
    }
  }
  if (in.bad()) throw Error(Errc::IoError, "read failure");
  return select(std::move(signals), channels);
}

std::vector<Signal> read_raw(std::istream& in, const std::vector<std::size_t>& channels) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(Errc::ParseError, "missing WSMF magic");
  const auto count = read_le<std::uint32_t>(in);
  const auto samples = read_le<std::uint64_t>(in);
  std::vector<Signal> signals(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    signals[c].label = "ch" + std::to_string(c);
    signals[c].samples.resize(samples);
    in.read(reinterpret_cast<char*>(signals[c].samples.data()),
            static_cast<std::streamsize>(samples * sizeof(double)));
    if (!in) {
      throw Error(Errc::LengthMismatch, "RAW payload shorter than " + std::to_string(count) + " x " +
                                            std::to_string(samples) + " samples");
    }
    for (std::uint64_t i = 0; i < samples; ++i) {
      if (!std::isfinite(signals[c].samples[i])) {
        throw Error(Errc::ParseError, "channel " + std::to_string(c) + ", sample " + std::to_string(i) +
                                          " is not finite");
      }
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(Errc::LengthMismatch, "trailing bytes after RAW payload");
  return select(std::move(signals), channels);
}

std::vector<Signal> ingest(const std::string& path, InputFormat format, const std::vector<std::size_t>& channels) {
  if (format == InputFormat::Auto) {
    const bool raw = path.size() >= 4 && path.compare(path.size() - 4, 4, ".raw") == 0;
    format = raw ? InputFormat::Raw : InputFormat::Csv;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  return format == InputFormat::Raw ? read_raw(in, channels) : read_csv(in, channels);
}

void write_csv(std::ostream& out, const std::vector<Signal>& signals) {
  const std::size_t n = common_length(signals);
  for (std::size_t c = 0; c < signals.size(); ++c) {
    out << (c ? "," : "") << (signals[c].label.empty() ? "ch" + std::to_string(c) : signals[c].label);
  }
  out << '\n';
  std::array<char, 32> buf{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < signals.size(); ++c) {
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), signals[c].samples[i]);
      if (c) out << ',';
      out.write(buf.data(), res.ptr - buf.data());
    }
    out << '\n';
  }
}

void write_raw(std::ostream& out, const std::vector<Signal>& signals) {
  const std::uint64_t n = common_length(signals);
  const auto count = static_cast<std::uint32_t>(signals.size());
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (const auto& s : signals) {
    out.write(reinterpret_cast<const char*>(s.samples.data()), static_cast<std::streamsize>(n * sizeof(double)));
  }
}

void write_signals(const std::string& path, InputFormat format, const std::vector<Signal>& signals) {
  if (format == InputFormat::Auto) {
    const bool raw = path.size() >= 4 && path.compare(path.size() - 4, 4, ".raw") == 0;
    format = raw ? InputFormat::Raw : InputFormat::Csv;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  if (format == InputFormat::Raw) {
    write_raw(out, signals);
  } else {
    write_csv(out, signals);
  }
  if (!out) throw Error(Errc::IoError, "write failure on '" + path + "'");
}

}  // namespace wsmf
