#include "cmab/ingest/movielens.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "cmab/core/errors.hpp"

namespace cmab {

const std::array<std::string_view, kGenreCount>& genre_table() {
    static const std::array<std::string_view, kGenreCount> table = {
        "Action",  "Adventure", "Animation", "Children", "Comedy",  "Crime",    "Documentary",
        "Drama",   "Fantasy",   "Film-Noir", "Horror",   "IMAX",    "Musical",  "Mystery",
        "Romance", "Sci-Fi",    "Thriller",  "War",      "Western", "(no genres listed)"};
    return table;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (c == delim && !quoted) {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, std::string_view what) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw IngestError("line " + std::to_string(line_no) + ": cannot parse " + std::string(what) + " '" +
                          std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::vector<RatingRow> read_ratings(std::istream& in, char delimiter) {
    std::vector<RatingRow> rows;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw IngestError("ratings input is empty (header expected)");
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_fields(line, delimiter);
        if (f.size() != 4) {
            throw IngestError("line " + std::to_string(line_no) + ": expected 4 ratings columns, got " +
                              std::to_string(f.size()));
        }
        RatingRow row;
        row.user = parse_number<std::int64_t>(f[0], line_no, "userId");
        row.movie = parse_number<std::int64_t>(f[1], line_no, "movieId");
        row.rating = parse_number<double>(f[2], line_no, "rating");
        row.timestamp = parse_number<std::int64_t>(f[3], line_no, "timestamp");
        rows.push_back(row);
    }
    return rows;
}

std::map<std::int64_t, GenreVector> read_genres(std::istream& in) {
    const auto& table = genre_table();
    std::map<std::int64_t, GenreVector> genres;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw IngestError("movies input is empty (header expected)");
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_fields(line, ',');
        if (f.size() < 3) {
            throw IngestError("line " + std::to_string(line_no) + ": expected movieId,title,genres");
        }
        const auto id = parse_number<std::int64_t>(f.front(), line_no, "movieId");
        GenreVector g{};
        std::string_view labels = trim(f.back());
        while (!labels.empty()) {
            const auto bar = labels.find('|');
            const auto label = trim(labels.substr(0, bar));
            const auto it = std::find(table.begin(), table.end(), label);
            if (it == table.end()) {
                throw IngestError("line " + std::to_string(line_no) + ": unknown genre '" + std::string(label) + "'");
            }
            g[static_cast<std::size_t>(it - table.begin())] = 1.0;
            if (bar == std::string_view::npos) break;
            labels.remove_prefix(bar + 1);
        }
        if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; })) {
            throw IngestError("line " + std::to_string(line_no) + ": movie has no genre");
        }
        genres[id] = g;
    }
    return genres;
}

RatingsTable load_ratings_table(const std::filesystem::path& ratings, const std::filesystem::path& movies) {
    std::ifstream rin(ratings);
    if (!rin) throw IngestError("cannot open ratings file " + ratings.string());
    std::ifstream min(movies);
    if (!min) throw IngestError("cannot open movies file " + movies.string());
    RatingsTable table;
    table.rows = read_ratings(rin);
    table.genres = read_genres(min);
    return table;
}

namespace {

struct MovieStats {
    std::size_t count = 0;
    double rating_sum = 0.0;
};

double norm(const GenreVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

MovieLensInstance build_movielens_instance(const RatingsTable& table, const MovieLensOptions& options) {
    std::vector<const RatingRow*> window;
    for (const auto& row : table.rows) {
        if (row.timestamp >= options.window_start && row.timestamp < options.window_end) window.push_back(&row);
    }
    if (window.empty()) throw IngestError("no ratings inside the date window");

    std::map<std::int64_t, MovieStats> stats;
    for (const auto* row : window) {
        auto& s = stats[row->movie];
        ++s.count;
        s.rating_sum += row->rating;
    }

    const std::size_t wanted = options.most_rated + options.least_rated + options.random_movies;
    if (stats.size() < wanted) {
        throw IngestError("date window has " + std::to_string(stats.size()) + " rated movies, " +
                          std::to_string(wanted) + " requested");
    }
    if (options.subset_size == 0 || options.subset_size > wanted) {
        throw IngestError("subset size must be in [1, number of selected movies]");
    }

    std::vector<std::int64_t> by_count;
    for (const auto& [id, s] : stats) by_count.push_back(id);
    auto more = [&](std::int64_t a, std::int64_t b) {
        return stats[a].count > stats[b].count || (stats[a].count == stats[b].count && a < b);
    };
    auto fewer = [&](std::int64_t a, std::int64_t b) {
        return stats[a].count < stats[b].count || (stats[a].count == stats[b].count && a < b);
    };

    std::set<std::int64_t> chosen;
    std::sort(by_count.begin(), by_count.end(), more);
    for (std::size_t i = 0; i < options.most_rated; ++i) chosen.insert(by_count[i]);
    std::sort(by_count.begin(), by_count.end(), fewer);
    for (std::size_t i = 0, taken = 0; taken < options.least_rated; ++i) {
        if (chosen.insert(by_count[i]).second) ++taken;
    }
    std::vector<std::int64_t> rest;
    for (const auto& [id, s] : stats) {
        if (!chosen.count(id)) rest.push_back(id);
    }
    Rng select_rng(options.selection_seed);
    for (std::size_t i = 0; i < options.random_movies; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, rest.size() - 1);
        std::swap(rest[i], rest[pick(select_rng)]);
        chosen.insert(rest[i]);
    }

    MovieLensInstance out;
    out.movie_ids.assign(chosen.begin(), chosen.end());
    const std::size_t v_count = out.movie_ids.size();
    std::map<std::int64_t, std::size_t> item_of;
    for (std::size_t i = 0; i < v_count; ++i) item_of[out.movie_ids[i]] = i;

    std::vector<GenreVector> g_hat(v_count);
    std::vector<GenreVector> g(v_count);
    std::vector<double> avg(v_count);
    double max_avg = 0.0;
    for (std::size_t i = 0; i < v_count; ++i) {
        const auto it = table.genres.find(out.movie_ids[i]);
        if (it == table.genres.end()) {
            throw IngestError("missing genre data for movie " + std::to_string(out.movie_ids[i]));
        }
        g[i] = it->second;
        const double len = norm(g[i]);
        if (len == 0.0) throw IngestError("movie " + std::to_string(out.movie_ids[i]) + " has no genre");
        for (std::size_t k = 0; k < kGenreCount; ++k) g_hat[i][k] = g[i][k] / len;
        const auto& s = stats[out.movie_ids[i]];
        avg[i] = s.rating_sum / static_cast<double>(s.count);
        max_avg = std::max(max_avg, avg[i]);
    }

    // Movies each user rated among the selected ones.
    std::map<std::int64_t, std::set<std::size_t>> rated;
    for (const auto* row : window) {
        const auto it = item_of.find(row->movie);
        if (it != item_of.end()) rated[row->user].insert(it->second);
    }
    for (const auto& [user, items] : rated) out.user_ids.push_back(user);
    if (options.user_cap > 0 && out.user_ids.size() > options.user_cap) {
        for (std::size_t i = 0; i < options.user_cap; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, out.user_ids.size() - 1);
            std::swap(out.user_ids[i], out.user_ids[pick(select_rng)]);
        }
        out.user_ids.resize(options.user_cap);
        std::sort(out.user_ids.begin(), out.user_ids.end());
    }
    const std::size_t w_count = out.user_ids.size();

    const double sigma = options.noise_parameter == NoiseParameter::Variance ? std::sqrt(options.noise) : options.noise;
    Rng noise_rng(options.noise_seed);
    std::normal_distribution<double> chi(0.0, sigma > 0.0 ? sigma : 1.0);

    auto& inst = out.instance;
    inst.items = v_count;
    inst.users = w_count;
    inst.subset_size = options.subset_size;
    inst.word_of_mouth = options.word_of_mouth;
    inst.attraction.assign(v_count * w_count, 0.0);
    for (std::size_t j = 0; j < w_count; ++j) {
        const auto& items = rated.at(out.user_ids[j]);
        GenreVector u{};
        for (std::size_t i : items) {
            for (std::size_t k = 0; k < kGenreCount; ++k) u[k] += g[i][k];
        }
        for (std::size_t k = 0; k < kGenreCount; ++k) {
            u[k] /= static_cast<double>(items.size());
            if (sigma > 0.0) u[k] += std::abs(chi(noise_rng));
        }
        const double u_len = norm(u);
        for (std::size_t i = 0; i < v_count; ++i) {
            double cos = 0.0;
            for (std::size_t k = 0; k < kGenreCount; ++k) cos += g_hat[i][k] * u[k];
            cos /= u_len;
            const double rel = max_avg > 0.0 ? avg[i] / max_avg : 0.0;
            inst.attraction[inst.arm(i, j)] = std::clamp(options.attraction_scale * cos * rel, 0.0, 1.0);
        }
    }
    return out;
}

}  // namespace cmab
