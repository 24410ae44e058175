#include "evac/wire.hpp"

#include <charconv>
#include <vector>

namespace evac::wire {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace

std::optional<ClientCmd> parse_client_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tokens = tokenize(line);
  if (tokens.empty()) return std::nullopt;

  if (tokens[0] == "POS" && tokens.size() == 4) {
    PosCmd cmd;
    if (parse_number(tokens[1], cmd.user) && parse_number(tokens[2], cmd.x) &&
        parse_number(tokens[3], cmd.y)) {
      return cmd;
    }
    return std::nullopt;
  }
  if (tokens[0] == "PLAN" && tokens.size() == 2) {
    PlanCmd cmd;
    if (parse_number(tokens[1], cmd.user)) return cmd;
    return std::nullopt;
  }
  if (tokens[0] == "BYE" && tokens.size() == 2) {
    ByeCmd cmd;
    if (parse_number(tokens[1], cmd.user)) return cmd;
    return std::nullopt;
  }
  if (tokens[0] == "SUB" && tokens.size() == 2 && tokens[1] == "DMAP") {
    return SubDmapCmd{};
  }
  return std::nullopt;
}

std::string format_route(std::uint64_t user, std::uint64_t version,
                         std::span<const GridCoord> cells) {
  std::string out = "ROUTE " + std::to_string(user) + ' ' + std::to_string(version) + ' ' +
                    std::to_string(cells.size());
  for (const GridCoord& c : cells) {
    out += ' ';
    out += std::to_string(c.x);
    out += ' ';
    out += std::to_string(c.y);
  }
  out += '\n';
  return out;
}

std::string format_err(std::uint64_t user, int code, std::string_view msg) {
  std::string out = "ERR " + std::to_string(user) + ' ' + std::to_string(code) + ' ';
  out += msg;
  out += '\n';
  return out;
}

std::string format_dmap(std::uint64_t version) {
  return "DMAP " + std::to_string(version) + '\n';
}

}  // namespace evac::wire
