#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsmf/wavelet.hpp"

namespace wsmf {

enum class InputFormat { Auto, Csv, Raw };

// "csv", "raw" or "auto" (chosen from the file extension, CSV otherwise).
InputFormat parse_input_format(const std::string& name);

// CSV: one column per channel, an optional single header row, decimal-point
// reals. RAW: 16-byte header ("WSMF", u32 channel count, u64 samples per
// channel, little endian) followed by channel-major little-endian f64.
// An empty channel list selects every channel.
std::vector<Signal> read_csv(std::istream& in, const std::vector<std::size_t>& channels = {});
std::vector<Signal> read_raw(std::istream& in, const std::vector<std::size_t>& channels = {});
std::vector<Signal> ingest(const std::string& path, InputFormat format = InputFormat::Auto,
                           const std::vector<std::size_t>& channels = {});

// All channels must share one length.
void write_csv(std::ostream& out, const std::vector<Signal>& signals);
void write_raw(std::ostream& out, const std::vector<Signal>& signals);
void write_signals(const std::string& path, InputFormat format, const std::vector<Signal>& signals);

}  // namespace wsmf
