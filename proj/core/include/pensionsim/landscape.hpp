#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pensionsim {

struct Position {
  int x = 0;
  int y = 0;
  bool operator==(const Position&) const = default;
};

struct Cell {
  double level = 0.0;
  int capacity = 0;
};

/// The resource field: a torus of cells, each with a current sugar level and
/// a fixed capacity in 0..4. Levels regrow toward capacity at growback_rate
/// per step. y grows downward (row 0 is the top of a map file).
class Landscape {
 public:
  Landscape(int width, int height);

  /// Procedural two-peak terrain. Peaks sit at (0.75w, 0.25h) and
  /// (0.25w, 0.75h); capacity falls off in terraces with plain Euclidean
  /// distance d to the nearest peak:
  ///   4 if d < 0.12w, 3 if d < 0.22w, 2 if d < 0.32w, 1 if d < 0.42w, else 0.
  /// Levels start at capacity. Requires width, height >= 10.
  static Landscape generate_default(int width, int height);

  /// Parses the map text format: lines of whitespace-separated integers in
  /// 0..4, one line per row, all rows the same length. Lines starting with
  /// '#' are comments. Levels are initialized to the parsed capacities.
  /// Throws std::runtime_error naming the offending line/column.
  static Landscape from_map_text(std::string_view text);

  /// Inverse of from_map_text: '#'-free rows of single-space-separated
  /// capacities, each newline-terminated.
  std::string to_map_text() const;

  int width() const { return width_; }
  int height() const { return height_; }
  double growback_rate() const { return growback_rate_; }
  void set_growback_rate(double rate) { growback_rate_ = rate; }

  /// Torus normalization of arbitrary integer coordinates.
  Position wrap(int x, int y) const;

  const Cell& at(Position p) const { return cells_[index(p)]; }
  Cell& at(Position p) { return cells_[index(p)]; }

  /// level <- min(level + growback_rate, capacity), every cell.
  void grow_back();

  /// Empties the cell and returns what was on it.
  double harvest(Position p);

  /// The positions visible from p with the given vision: offsets 1..vision
  /// north (y-1), then south, east, west, torus-wrapped, duplicates removed
  /// (duplicates only occur when 2*vision reaches a map dimension).
  std::vector<Position> visible_positions(Position p, int vision) const;

  /// Smallest wrapped step count along the lattice between two positions.
  int lattice_distance(Position a, Position b) const;

  std::size_t cell_count() const { return cells_.size(); }

 private:
  std::size_t index(Position p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(p.x);
  }

  int width_;
  int height_;
  double growback_rate_ = 1.0;
  std::vector<Cell> cells_;
};

}  // namespace pensionsim
