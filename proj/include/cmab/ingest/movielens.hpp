#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string_view>
#include <vector>

#include "cmab/environments/pmc.hpp"

namespace cmab {

inline constexpr std::size_t kGenreCount = 20;

/// Fixed genre slots; a label outside this table is an ingestion error.
const std::array<std::string_view, kGenreCount>& genre_table();

using GenreVector = std::array<double, kGenreCount>;

struct RatingRow {
    std::int64_t user = 0;
    std::int64_t movie = 0;
    double rating = 0.0;
    std::int64_t timestamp = 0;
};

struct RatingsTable {
    std::vector<RatingRow> rows;
    std::map<std::int64_t, GenreVector> genres;  // movie id -> 0/1 genre indicators
};

/// Ratings: header line, then userId,movieId,rating,timestamp rows.
std::vector<RatingRow> read_ratings(std::istream& in, char delimiter = ',');
/// Movies: header line, then movieId,title,genres rows with pipe-separated
/// genres. Titles may contain quoted delimiters.
std::map<std::int64_t, GenreVector> read_genres(std::istream& in);

/// Throws IngestError when a file cannot be opened or parsed.
RatingsTable load_ratings_table(const std::filesystem::path& ratings,
                                const std::filesystem::path& movies);

enum class NoiseParameter { Variance, StdDev };

struct MovieLensOptions {
    std::int64_t window_start = 1393632000;  // 2014-03-01T00:00:00Z, inclusive
    std::int64_t window_end = 1427846400;    // 2015-04-01T00:00:00Z, exclusive
    std::size_t most_rated = 10;
    std::size_t least_rated = 10;
    std::size_t random_movies = 10;
    std::size_t user_cap = 0;  // 0 keeps every user
    std::size_t subset_size = 3;
    double word_of_mouth = 0.05;
    double attraction_scale = 0.2;
    double noise = 0.05;
    NoiseParameter noise_parameter = NoiseParameter::Variance;
    std::uint64_t selection_seed = 1;  // random movies and user subsample
    std::uint64_t noise_seed = 2;
};

struct MovieLensInstance {
    PmcInstance instance;
    std::vector<std::int64_t> movie_ids;  // item index -> movie id
    std::vector<std::int64_t> user_ids;   // user index -> user id
};

/// Builds the PMC instance: genre-preference vectors per user, cosine
/// similarity with each movie's genres, scaled by relative average rating.
/// Throws IngestError on an empty window, too few movies, or missing genres.
MovieLensInstance build_movielens_instance(const RatingsTable& table, const MovieLensOptions& options);

}  // namespace cmab
