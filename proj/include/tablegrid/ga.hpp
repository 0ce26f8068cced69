#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include "tablegrid/genotype.hpp"
#include "tablegrid/image.hpp"
#include "tablegrid/render.hpp"

namespace tablegrid {

struct StructuralOpProbs {
  double add = 0.03;
  double merge = 0.03;
  double remove = 0.03;
};

struct GAParams {
  int population_size = 50;
  bool elitism = true;
  // Share of the non-elite slots filled by mutated survivors; the rest are
  // crossover children.
  double reproduce_frac = 0.70;
  // Per genotype entry (x0, y0, each present extent).
  double numeric_mutation_prob = 0.1;
  // Per dimension (rows, columns); picks one of add/merge/remove weighted by
  // structural_ops.
  double structural_mutation_prob = 0.1;
  StructuralOpProbs structural_ops;
  double numeric_mutation_sigma = 5.0;
  double convergence_epsilon = 0.01;
  int convergence_window = 3;
  int max_epochs = 200;
  std::uint64_t seed = 0;
  BorderStyle style = BorderStyle::blurred();
};

// Throws InvalidArgument on out-of-range parameters.
void validate_params(const GAParams& p);

struct FitnessScore {
  double value = 0.0;
};

// |G - u|_1 / (|1 - u|_1 * |1 - G|_1) with intensities scaled to [0,1]
// (0 = black). Both images must have the same shape; colour inputs are
// reduced to luminance. Throws DegenerateInput when either image is all white.
double overlap_objective(const RasterImage& target, const RasterImage& candidate);

// Renders the candidate at target resolution in `style` and scores it.
FitnessScore fitness(const TableGenotype& candidate, const RasterImage& target,
                     const BorderStyle& style);

struct MutationStats {
  long numeric_eligible = 0;
  long numeric_perturbed = 0;
  long structural_fired = 0;
};

// Gaussian steps on x0, y0 and present extents plus at most one structural
// op per dimension. The result is compacted and clamped into the canvas.
TableGenotype mutate(const TableGenotype& g, const GAParams& p, Canvas canvas, std::mt19937_64& rng,
                     MutationStats* stats = nullptr);
TableGenotype mutate(const TableGenotype& g, const GAParams& p, Canvas canvas, std::uint64_t seed);

// Splits the largest present extent in two. No-op at full cardinality.
void add_extent(std::vector<int>& extents);
// Sums the extents at present positions k and k+1.
void merge_extents(std::vector<int>& extents, int k);
// Deletes the smallest present extent; keeps at least one.
void remove_extent(std::vector<int>& extents);

// x0 and columns from p1, y0 and rows from p2. Throws InvalidArgument when
// the declared cardinalities differ.
TableGenotype crossover(const TableGenotype& p1, const TableGenotype& p2, Canvas canvas = {});

// Shrinks extents / shifts the origin so the table fits the canvas.
TableGenotype clamp_to_canvas(TableGenotype g, Canvas canvas);

// True once each of the last `window` epochs improved the best fitness by no
// more than `epsilon` relative to the epoch before.
bool has_converged(std::span<const double> history, double epsilon, int window);

struct EvolveResult {
  TableGenotype best;
  double best_fitness = 0.0;
  // Best fitness of the initial population followed by one entry per epoch.
  std::vector<double> history;
  bool converged = false;
};

EvolveResult evolve(const TableGenotype& initial, const RasterImage& target, const GAParams& p);

// "epoch,best_fitness" CSV.
void write_history_csv(std::span<const double> history, const std::filesystem::path& path);

}  // namespace tablegrid
