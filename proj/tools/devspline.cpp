#include <devspline/geometry_io.h>

int main(int argc, char** argv)
{
    return devspline::io::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
