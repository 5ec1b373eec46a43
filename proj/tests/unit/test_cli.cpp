#include <plakit/cli.hpp>
#include <plakit/error.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plakit;

namespace
{

std::string data( std::string const& name ) { return std::string( PLAKIT_TEST_DATA ) + "/" + name; }

std::string slurp( std::string const& path )
{
  std::ifstream f( path, std::ios::binary );
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run( std::vector<std::string> args, std::string const& stdin_text = {} )
{
  std::istringstream in( stdin_text );
  std::ostringstream out, err;
  int const code = cli::run( args, in, out, err );
  return { code, out.str(), err.str() };
}

std::filesystem::path scratch( std::string const& name )
{
  auto dir = std::filesystem::temp_directory_path() / "plakit_cli_test";
  std::filesystem::create_directories( dir );
  return dir / name;
}

} // namespace

TEST( Profile, Parses )
{
  auto const p = cli::parse_profile( "n10p56m16:antifuse:xor" );
  EXPECT_EQ( p.n_inputs, 10u );
  EXPECT_EQ( p.n_terms, 56u );
  EXPECT_EQ( p.n_outputs, 16u );
  EXPECT_EQ( p.tech, switch_tech::antifuse );
  EXPECT_TRUE( p.has_output_xor );
  EXPECT_EQ( cli::parse_profile( "n3p4m1" ), ( PlaProfile{ 3, 4, 1 } ) );
  for ( auto bad : { "n3p4", "3p4m1", "n3p0m1", "n3p4m1:xor:xor", "n3p4m1:fast", "nxp4m1" } )
    EXPECT_THROW( cli::parse_profile( bad ), argument_error ) << bad;
}

TEST( Cli, TableOfMajority )
{
  auto const r = run( { "table", "A'BC + AB'C + ABC' + ABC" } );
  EXPECT_EQ( r.code, 0 );
  EXPECT_EQ( r.out, "A B C | F\n0 0 0 | 0\n0 0 1 | 0\n0 1 0 | 0\n0 1 1 | 1\n"
                    "1 0 0 | 0\n1 0 1 | 1\n1 1 0 | 1\n1 1 1 | 1\n" );
}

TEST( Cli, CompileThenSimMatchesMajorityTable )
{
  auto const compiled = run( { "compile", "--profile", "n3p4m1", data( "majority.eqn" ) } );
  ASSERT_EQ( compiled.code, 0 ) << compiled.err;
  EXPECT_EQ( compiled.out, slurp( data( "majority.fuse" ) ) );
  EXPECT_NE( compiled.err.find( "terms used:" ), std::string::npos );
  auto const sim = run( { "sim", "--vectors", "all8", "-" }, compiled.out );
  ASSERT_EQ( sim.code, 0 ) << sim.err;
  EXPECT_EQ( sim.out, "0\n0\n0\n1\n0\n1\n1\n1\n" );
}

TEST( Cli, SimVectorFileAndEcho )
{
  auto const vec = scratch( "maj.vec" );
  std::ofstream( vec ) << "# two vectors\n011\n\n100\n";
  auto const r = run( { "sim", data( "majority.fuse" ), "--vectors", vec.string(), "--echo" } );
  EXPECT_EQ( r.code, 0 ) << r.err;
  EXPECT_EQ( r.out, "011 1\n100 0\n" );
  std::ofstream( vec ) << "01\n";
  EXPECT_EQ( run( { "sim", data( "majority.fuse" ), "--vectors", vec.string() } ).code, cli::exit_format );
  EXPECT_EQ( run( { "sim", data( "majority.fuse" ), "--vectors", "all7" } ).code, cli::exit_usage );
}

TEST( Cli, SynthCanonicalAndMinimized )
{
  auto const canon = run( { "synth", data( "majority.eqn" ) } );
  EXPECT_EQ( canon.out, slurp( data( "majority.pla" ) ) );
  auto const min = run( { "synth", "--minimize", "-" }, slurp( data( "majority.eqn" ) ) );
  EXPECT_NE( min.out.find( ".p 3\n" ), std::string::npos ) << min.out;
}

TEST( Cli, VerifyExitCodes )
{
  EXPECT_EQ( run( { "verify", data( "majority.fuse" ), data( "majority.eqn" ) } ).code, 0 );
  auto const wrong = scratch( "wrong.eqn" );
  std::ofstream( wrong ) << "F = AB + BC\n";
  auto const r = run( { "verify", data( "majority.fuse" ), wrong.string() } );
  EXPECT_EQ( r.code, cli::exit_mismatch );
  EXPECT_NE( r.out.find( "101" ), std::string::npos ) << r.out;
}

TEST( Cli, CapacityAndFormatExitCodes )
{
  auto const cap = run( { "compile", "--profile", "n4p4m1", data( "g.eqn" ) } );
  EXPECT_EQ( cap.code, cli::exit_capacity );
  EXPECT_NE( cap.err.find( "terms" ), std::string::npos );
  EXPECT_EQ( run( { "compile", "--profile", "n3p4m1", "-" }, "F = A +\n" ).code, cli::exit_format );
  EXPECT_EQ( run( { "diagram", "-" }, "PLAFUSE 9\n" ).code, cli::exit_format );
  EXPECT_EQ( run( { "compile", "--profile", "bogus", data( "g.eqn" ) } ).code, cli::exit_usage );
  EXPECT_EQ( run( { "frobnicate" } ).code, cli::exit_usage );
  EXPECT_EQ( run( {} ).code, cli::exit_usage );
  EXPECT_EQ( run( { "--help" } ).code, cli::exit_ok );
}

TEST( Cli, PolarityFlag )
{
  auto const r = run( { "compile", "--profile", "n3p8m1:xor", "--polarity", "G", "-" },
                      "G = (A + B + C)(A' + B + C)(A + B' + C')\n" );
  ASSERT_EQ( r.code, 0 ) << r.err;
  EXPECT_NE( r.out.find( "POL 1" ), std::string::npos );
  EXPECT_EQ( run( { "compile", "--profile", "n3p8m1", "--polarity", "G", "-" }, "G = A\n" ).code, cli::exit_usage );
  EXPECT_EQ( run( { "compile", "--profile", "n3p8m1:xor", "--polarity", "H", "-" }, "G = A\n" ).code, cli::exit_usage );
}

TEST( Cli, DiagramColorRespectsNoColor )
{
  auto const plain = run( { "diagram", data( "majority.fuse" ) } );
  EXPECT_EQ( plain.out.find( '\x1b' ), std::string::npos );
  ::unsetenv( "NO_COLOR" );
  EXPECT_NE( run( { "diagram", "--color", data( "majority.fuse" ) } ).out.find( '\x1b' ), std::string::npos );
  ::setenv( "NO_COLOR", "1", 1 );
  EXPECT_EQ( run( { "diagram", "--color", data( "majority.fuse" ) } ).out.find( '\x1b' ), std::string::npos );
  ::unsetenv( "NO_COLOR" );
}

TEST( Cli, FsmAndFsmsim )
{
  auto const enc = scratch( "toggle.enc" );
  auto const fsm = run( { "fsm", data( "toggle.kiss2" ), "--profile", "n2p4m2", "--encoding", enc.string() } );
  ASSERT_EQ( fsm.code, 0 ) << fsm.err;
  auto const fuse = scratch( "toggle.fuse" );
  std::ofstream( fuse ) << fsm.out;
  auto const trace =
      run( { "fsmsim", fuse.string(), "--encoding", enc.string(), "--vectors", data( "toggle.vec" ) } );
  ASSERT_EQ( trace.code, 0 ) << trace.err;
  EXPECT_EQ( trace.out, "0 0 1\n1 1 0\n2 0 1\n" );
  EXPECT_EQ( run( { "fsm", data( "toggle.kiss2" ), "--profile", "n1p4m2" } ).code, cli::exit_capacity );
}

TEST( Cli, FaultModes )
{
  auto const one = run( { "fault", data( "majority.fuse" ), "--fault", "OR:0:0:0" } );
  EXPECT_EQ( one.code, 0 );
  EXPECT_EQ( one.out, "OR:0:0:0 detected 011\n" );
  auto const all = run( { "fault", data( "majority.fuse" ), "--all" } );
  EXPECT_EQ( all.code, 0 );
  EXPECT_NE( all.out.find( "coverage " ), std::string::npos );
  EXPECT_EQ( run( { "fault", data( "majority.fuse" ), "--all", "--fail-on-detect" } ).code, cli::exit_mismatch );
  EXPECT_EQ( run( { "fault", data( "majority.fuse" ) } ).code, cli::exit_usage );
  EXPECT_EQ( run( { "fault", data( "majority.fuse" ), "--fault", "OR:9:0:0" } ).code, cli::exit_usage );
}

TEST( Cli, Deterministic )
{
  auto const a = run( { "compile", "--minimize", "--profile", "n4p16m2", data( "two_outputs.eqn" ) } );
  auto const b = run( { "compile", "--minimize", "--profile", "n4p16m2", data( "two_outputs.eqn" ) } );
  EXPECT_EQ( a.out, b.out );
  EXPECT_EQ( a.err, b.err );
}

TEST( Cli, CompileVerifyOverExampleCorpus )
{
  for ( auto const* file : { "majority.eqn", "f.eqn", "g.eqn", "two_outputs.eqn" } )
    for ( bool min : { false, true } )
    {
      std::vector<std::string> args{ "compile", "--profile", "n4p16m2", data( file ) };
      if ( min )
        args.push_back( "--minimize" );
      auto const c = run( args );
      ASSERT_EQ( c.code, 0 ) << file << c.err;
      auto const fuse = scratch( "corpus.fuse" );
      std::ofstream( fuse ) << c.out;
      EXPECT_EQ( run( { "verify", fuse.string(), data( file ) } ).code, 0 ) << file;
    }
}
