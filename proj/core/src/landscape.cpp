#include "pensionsim/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pensionsim {

Landscape::Landscape(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("Landscape: dimensions must be positive");
  }
  cells_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
}

Landscape Landscape::generate_default(int width, int height) {
  if (width < 10 || height < 10) {
    throw std::invalid_argument("generate_default: dimensions must be >= 10");
  }
  Landscape land(width, height);

  const double px[2] = {0.75 * width, 0.25 * width};
  const double py[2] = {0.25 * height, 0.75 * height};
  const int peak_x[2] = {static_cast<int>(std::floor(px[0])),
                         static_cast<int>(std::floor(px[1]))};
  const int peak_y[2] = {static_cast<int>(std::floor(py[0])),
                         static_cast<int>(std::floor(py[1]))};
  const double w = static_cast<double>(width);

  auto band = [w](double d) {
    if (d < 0.12 * w) return 4;
    if (d < 0.22 * w) return 3;
    if (d < 0.32 * w) return 2;
    if (d < 0.42 * w) return 1;
    return 0;
  };

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int cap = 0;
      for (int k = 0; k < 2; ++k) {
        const double dx = x - peak_x[k];
        const double dy = y - peak_y[k];
        cap = std::max(cap, band(std::hypot(dx, dy)));
      }
      Cell& c = land.at({x, y});
      c.capacity = cap;
      c.level = cap;
    }
  }
  return land;
}

Landscape Landscape::from_map_text(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;
    // A line of pure whitespace is ignored; anything else must parse fully.
    std::istringstream ls(line);
    std::vector<int> row;
    std::string token;
    int col = 0;
    while (ls >> token) {
      ++col;
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw std::runtime_error("map parse error at line " + std::to_string(line_no) +
                                 ", column " + std::to_string(col) +
                                 ": not an integer: '" + token + "'");
      }
      if (value < 0 || value > 4) {
        throw std::runtime_error("map parse error at line " + std::to_string(line_no) +
                                 ", column " + std::to_string(col) + ": value " +
                                 std::to_string(value) + " outside 0..4");
      }
      row.push_back(value);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("map parse error: no data rows");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw std::runtime_error("map parse error: row " + std::to_string(r + 1) +
                               " has " + std::to_string(rows[r].size()) +
                               " values, expected " + std::to_string(width));
    }
  }

  Landscape land(static_cast<int>(width), static_cast<int>(rows.size()));
  for (int y = 0; y < land.height(); ++y) {
    for (int x = 0; x < land.width(); ++x) {
      Cell& c = land.at({x, y});
      c.capacity = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      c.level = c.capacity;
    }
  }
  return land;
}

std::string Landscape::to_map_text() const {
  std::string out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (x > 0) out += ' ';
      out += std::to_string(at({x, y}).capacity);
    }
    out += '\n';
  }
  return out;
}

Position Landscape::wrap(int x, int y) const {
  x %= width_;
  if (x < 0) x += width_;
  y %= height_;
  if (y < 0) y += height_;
  return {x, y};
}

void Landscape::grow_back() {
  for (Cell& c : cells_) {
    c.level = std::min(c.level + growback_rate_, static_cast<double>(c.capacity));
  }
}

double Landscape::harvest(Position p) {
  Cell& c = at(p);
  const double taken = c.level;
  c.level = 0.0;
  return taken;
}

std::vector<Position> Landscape::visible_positions(Position p, int vision) const {
  if (vision < 1) throw std::invalid_argument("visible_positions: vision must be >= 1");
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(4 * vision));
  const int dirs[4][2] = {{0, -1}, {0, 1}, {1, 0}, {-1, 0}};  // N, S, E, W
  for (const auto& dir : dirs) {
    for (int d = 1; d <= vision; ++d) {
      const Position q = wrap(p.x + dir[0] * d, p.y + dir[1] * d);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  }
  return out;
}

int Landscape::lattice_distance(Position a, Position b) const {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return std::min(dx, width_ - dx) + std::min(dy, height_ - dy);
}

}  // namespace pensionsim
