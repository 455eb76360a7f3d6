#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "signorini/study.hpp"
#include "signorini/vtk.hpp"

using namespace signorini;

namespace {

RunConfig small_known()
{
    RunConfig c;
    c.levels = 3;
    c.base_n = 4;
    return c;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::vector<std::string> section(const std::string& text, const std::string& header, std::size_t count)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && line.rfind(header, 0) != 0) {
    }
    std::getline(in, line); // LOOKUP_TABLE
    if (line.rfind("LOOKUP_TABLE", 0) != 0)
        return {};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count && std::getline(in, line); ++i)
        out.push_back(line);
    return out;
}

} // namespace

TEST(Study, ConfigValidation)
{
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    c.levels = 1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.params.gamma0 = -1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.problem = ProblemKind::Oscillatory;
    c.levels = 5;
    EXPECT_NO_THROW(c.validate());
    c.reference_n = 256;
    EXPECT_THROW(c.validate(), ConfigError);
    c.reference_n = 768;
    EXPECT_THROW(c.validate(), ConfigError);
    c.reference_n = 1024;
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(problem_kind_from_string("heat"), ConfigError);
    EXPECT_EQ(problem_kind_from_string("oscillatory"), ProblemKind::Oscillatory);
    EXPECT_EQ((RunConfig{}.level_sizes()), (std::vector<int>{16, 32, 64, 128}));
}

TEST(Study, CsvIsDeterministicAndRatesRecompute)
{
    const auto config = small_known();
    const auto a = run_convergence_study(config);
    const auto b = run_convergence_study(config);
    ASSERT_TRUE(a.all_converged);
    const std::string csv = to_csv(a.report);
    EXPECT_EQ(csv, to_csv(b.report));

    const auto rows = parse_csv(csv);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].size(), 11u);
    EXPECT_EQ(rows[0][0], "level");
    EXPECT_EQ(rows[0][10], "eoc_residual");
    for (int col : {8, 9, 10})
        EXPECT_TRUE(rows[1][col].empty());
    for (std::size_t i = 2; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 11u);
        const double h0 = std::stod(rows[i - 1][2]), h1 = std::stod(rows[i][2]);
        for (int col : {5, 6, 7}) {
            const double e0 = std::stod(rows[i - 1][col]), e1 = std::stod(rows[i][col]);
            const double rate = std::log(e0 / e1) / std::log(h0 / h1);
            EXPECT_NEAR(std::stod(rows[i][col + 3]), rate, 1e-12);
        }
    }
    EXPECT_EQ(std::stoi(rows[3][1]), 16);
}

TEST(Study, JsonMirror)
{
    const auto config = small_known();
    const auto result = run_convergence_study(config);
    const auto j = to_json(config, result);
    EXPECT_EQ(j["config"]["problem"], "known");
    EXPECT_EQ(j["levels"].size(), 3u);
    EXPECT_TRUE(j["levels"][0]["eoc_l2"].is_null() || !j["levels"][0].contains("eoc_l2"));
    EXPECT_TRUE(j["eoc_l2"][0].is_number());
    EXPECT_EQ(j["levels"][2]["solve"]["iterations"], result.solves[2].iterations);
    EXPECT_EQ(j["levels"][2]["solve"]["increment_history"].size(),
              static_cast<std::size_t>(result.solves[2].iterations));
    EXPECT_TRUE(j["reference_solve"].is_null());
    EXPECT_TRUE(j["all_converged"].get<bool>());
}

TEST(Study, OscillatoryUsesReference)
{
    RunConfig c;
    c.problem = ProblemKind::Oscillatory;
    c.levels = 2;
    c.base_n = 4;
    c.reference_n = 32;
    const auto r = run_convergence_study(c);
    ASSERT_TRUE(r.reference_solve.has_value());
    EXPECT_TRUE(r.reference_solve->converged);
    EXPECT_LT(r.reference_solve->increment_history.back(), 1e-10);
    EXPECT_TRUE(r.all_converged);
    EXPECT_LT(r.report.levels[1].err_h1_broken, r.report.levels[0].err_h1_broken);
}

TEST(Study, NonConvergenceIsReported)
{
    auto c = small_known();
    c.solver.max_iter = 1;
    const auto r = run_convergence_study(c);
    EXPECT_FALSE(r.all_converged);
    EXPECT_EQ(r.report.levels.size(), 3u);
}

TEST(Vtk, SolutionExport)
{
    auto space = std::make_shared<const CRSpace>(std::make_shared<const Mesh>(build_unit_square_mesh(3)));
    const std::size_t nt = space->mesh().num_triangles();

    std::ostringstream zero;
    export_solution(DiscreteField(space), zero);
    const std::string z = zero.str();
    EXPECT_EQ(z.rfind("# vtk DataFile Version 2.0\n", 0), 0u);
    EXPECT_NE(z.find("POINTS " + std::to_string(3 * nt) + " double"), std::string::npos);
    for (const auto& v : section(z, "SCALARS u", 3 * nt))
        EXPECT_EQ(std::stod(v), 0.0);
    EXPECT_EQ(section(z, "SCALARS u", 3 * nt).size(), 3 * nt);

    // Constant field on a space without Dirichlet faces.
    auto free_space = std::make_shared<const CRSpace>(std::make_shared<const Mesh>(classify_boundary(
        build_unit_square_mesh(3), [](Point) { return std::optional(BoundaryTag::Neumann); })));
    std::ostringstream constant;
    export_solution(cr_interpolate(free_space, [](Point) { return 2.5; }), constant);
    const std::string c = constant.str();
    for (const auto& v : section(c, "SCALARS u", 3 * nt))
        EXPECT_NEAR(std::stod(v), 2.5, 1e-14);
    const auto grads = section(c, "SCALARS grad_u_magnitude", nt);
    ASSERT_EQ(grads.size(), nt);
    for (const auto& v : grads)
        EXPECT_NEAR(std::stod(v), 0.0, 1e-13);
}

TEST(Vtk, MeshExportAndIoErrors)
{
    const Mesh mesh = build_unit_square_mesh(2);
    std::ostringstream os;
    write_mesh_vtk(mesh, os);
    EXPECT_NE(os.str().find("POINTS 9 double"), std::string::npos);
    EXPECT_NE(os.str().find("CELLS 8 32"), std::string::npos);
    EXPECT_EQ(section(os.str(), "SCALARS triangle_index", 8).size(), 8u);

    const auto bad = std::filesystem::path("/nonexistent-dir/out.vtk");
    EXPECT_THROW(write_mesh_vtk(mesh, bad), std::runtime_error);
    auto space = std::make_shared<const CRSpace>(std::make_shared<const Mesh>(mesh));
    EXPECT_THROW(export_solution(DiscreteField(space), bad), std::runtime_error);

    const auto tmp = std::filesystem::temp_directory_path() / "signorini_mesh_test.vtk";
    write_mesh_vtk(mesh, tmp);
    EXPECT_GT(std::filesystem::file_size(tmp), 0u);
    std::filesystem::remove(tmp);
}
