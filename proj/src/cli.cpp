#include <plakit/cli.hpp>

#include <plakit/error.hpp>
#include <plakit/fit.hpp>
#include <plakit/fsm.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace plakit::cli
{

namespace
{

std::string read_source( std::string const& path, std::istream& in )
{
  std::ostringstream buf;
  if ( path == "-" )
  {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file( path, std::ios::binary );
  if ( !file )
    throw argument_error( "cannot open '" + path + "'" );
  buf << file.rdbuf();
  return buf.str();
}

void write_file( std::string const& path, std::string const& content )
{
  std::ofstream file( path, std::ios::binary );
  if ( !file || !( file << content ) )
    throw argument_error( "cannot write '" + path + "'" );
}

std::vector<std::string> split_list( std::string const& text )
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss( text );
  while ( std::getline( ss, item, ',' ) )
  {
    item.erase( 0, item.find_first_not_of( " \t" ) );
    item.erase( item.find_last_not_of( " \t" ) + 1 );
    if ( !item.empty() )
      out.push_back( item );
  }
  return out;
}

/// Vector file: one vector of `width` 0/1 characters per line, blank lines and `#` comments skipped.
std::vector<BitVector> parse_vectors( std::string_view text, std::size_t width )
{
  std::vector<BitVector> vectors;
  std::size_t line_no = 0;
  while ( !text.empty() )
  {
    ++line_no;
    auto const nl = text.find( '\n' );
    auto line = text.substr( 0, nl );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
    line = line.substr( 0, line.find( '#' ) );
    auto const first = line.find_first_not_of( " \t\r" );
    if ( first == std::string_view::npos )
      continue;
    line = line.substr( first, line.find_last_not_of( " \t\r" ) - first + 1 );
    if ( line.size() != width )
      throw format_error( "vector '" + std::string( line ) + "' is not " + std::to_string( width ) + " bits wide",
                          line_no );
    BitVector v;
    for ( char c : line )
    {
      if ( c != '0' && c != '1' )
        throw format_error( std::string( "illegal vector character '" ) + c + "'", line_no );
      v.push_back( c == '1' );
    }
    vectors.push_back( std::move( v ) );
  }
  return vectors;
}

std::vector<BitVector> load_vectors( std::string const& spec, std::size_t width, std::istream& in )
{
  if ( spec.rfind( "all", 0 ) == 0 )
  {
    if ( width > max_table_vars )
      throw argument_error( "refusing to enumerate 2^" + std::to_string( width ) + " vectors (limit 2^" +
                            std::to_string( max_table_vars ) + ")" );
    std::uint64_t const count = std::uint64_t{ 1 } << width;
    if ( spec.size() > 3u )
    {
      std::uint64_t requested = 0;
      auto [ptr, ec] = std::from_chars( spec.data() + 3, spec.data() + spec.size(), requested );
      if ( ec != std::errc{} || ptr != spec.data() + spec.size() || requested != count )
        throw argument_error( "'" + spec + "' does not match the " + std::to_string( count ) +
                              " vectors of a " + std::to_string( width ) + "-input device" );
    }
    std::vector<BitVector> vectors;
    for ( std::uint64_t r = 0; r < count; ++r )
      vectors.push_back( row_to_bits( static_cast<Row>( r ), width ) );
    return vectors;
  }
  return parse_vectors( read_source( spec, in ), width );
}

std::size_t parse_positive( std::string_view text, std::string_view spec )
{
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), v );
  if ( text.empty() || ec != std::errc{} || ptr != text.data() + text.size() )
    throw argument_error( "malformed profile '" + std::string( spec ) + "'" );
  return v;
}

std::string render_table( TruthTable const& table, std::string const& name )
{
  auto const& order = table.order();
  std::ostringstream out;
  auto cell = []( std::string const& text, std::size_t width ) {
    std::string s = text;
    s.resize( std::max( width, s.size() ), ' ' );
    return s;
  };
  for ( std::size_t j = 0; j < order.size(); ++j )
    out << order[j] << ' ';
  out << "| " << name << '\n';
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
  {
    auto const bits = row_to_bits( static_cast<Row>( r ), order.size() );
    for ( std::size_t j = 0; j < order.size(); ++j )
      out << cell( bits[j] ? "1" : "0", order[j].size() ) << ' ';
    out << "| " << ( table[static_cast<Row>( r )] ? 1 : 0 ) << '\n';
  }
  return out.str();
}

std::string colorize( std::string const& diagram )
{
  std::string out;
  for ( char c : diagram )
  {
    if ( c == 'X' )
      out += "\x1b[1;32mX\x1b[0m";
    else
      out += c;
  }
  return out;
}

struct Options
{
  std::string expr;
  std::string input = "-";
  std::string second;
  std::string profile;
  std::string order;
  std::string name = "F";
  std::string vectors;
  std::string encoding;
  std::vector<std::string> polarity;
  std::vector<std::string> faults;
  bool multi_letter = false;
  bool minimize = false;
  bool strict = false;
  bool echo = false;
  bool all_faults = false;
  bool fail_on_detect = false;
  bool color = false;
};

ParseOptions parse_options( Options const& o ) { return ParseOptions{ o.multi_letter }; }

int cmd_table( Options const& o, std::ostream& out )
{
  auto const expr = parse_expression( o.expr, parse_options( o ) );
  auto const order = o.order.empty() ? variables( expr ) : VarOrder( split_list( o.order ) );
  out << render_table( table_from_expr( expr, order ), o.name );
  return exit_ok;
}

CompileOptions compile_options( Options const& o, std::vector<Equation> const& equations )
{
  CompileOptions opts;
  opts.minimize = o.minimize;
  if ( !o.order.empty() )
    opts.order = VarOrder( split_list( o.order ) );
  if ( !o.polarity.empty() )
  {
    opts.polarity.assign( equations.size(), false );
    for ( auto const& name : o.polarity )
    {
      auto it = std::find_if( equations.begin(), equations.end(), [&]( Equation const& e ) { return e.name == name; } );
      if ( it == equations.end() )
        throw argument_error( "--polarity names unknown output '" + name + "'" );
      opts.polarity[static_cast<std::size_t>( it - equations.begin() )] = true;
    }
  }
  return opts;
}

int cmd_synth( Options const& o, std::istream& in, std::ostream& out )
{
  auto const equations = parse_equations( read_source( o.input, in ), parse_options( o ) );
  out << write_berkeley_pla( synthesize( equations, compile_options( o, equations ) ) );
  return exit_ok;
}

int cmd_compile( Options const& o, std::istream& in, std::ostream& out, std::ostream& err )
{
  auto const equations = parse_equations( read_source( o.input, in ), parse_options( o ) );
  auto const result = compile( equations, parse_profile( o.profile ), compile_options( o, equations ) );
  out << emit_fusemap( result.state );
  err << to_string( result.report );
  return exit_ok;
}

int cmd_sim( Options const& o, std::istream& in, std::ostream& out )
{
  if ( o.input == "-" && o.vectors == "-" )
    throw argument_error( "fuse map and vectors cannot both come from stdin" );
  auto const state = parse_fusemap( read_source( o.input, in ) );
  auto const vectors = load_vectors( o.vectors, state.profile().n_inputs, in );
  PlaEvaluator const device( state );
  for ( auto const& v : vectors )
  {
    if ( o.echo )
      out << to_string( v ) << ' ';
    out << to_string( device( bits_to_row( v ) ) ) << '\n';
  }
  return exit_ok;
}

int cmd_verify( Options const& o, std::istream& in, std::ostream& out )
{
  if ( o.input == "-" && o.second == "-" )
    throw argument_error( "fuse map and equations cannot both come from stdin" );
  auto const state = parse_fusemap( read_source( o.input, in ) );
  auto const equations = parse_equations( read_source( o.second, in ), parse_options( o ) );
  if ( auto mismatch = verify_device( state, equations ) )
  {
    out << "MISMATCH output " << state.output_label( mismatch->output ) << " input " << to_string( mismatch->input )
        << " expected " << mismatch->expected << " device " << mismatch->actual << '\n';
    return exit_mismatch;
  }
  out << "EQUIVALENT " << equations.size() << " outputs over " << ( std::uint64_t{ 1 } << state.profile().n_inputs )
      << " vectors\n";
  return exit_ok;
}

int cmd_diagram( Options const& o, std::istream& in, std::ostream& out )
{
  auto const diagram = render_crosspoint_diagram( parse_fusemap( read_source( o.input, in ) ) );
  bool const color = o.color && std::getenv( "NO_COLOR" ) == nullptr;
  out << ( color ? colorize( diagram ) : diagram );
  return exit_ok;
}

int cmd_fsm( Options const& o, std::istream& in, std::ostream& out, std::ostream& err )
{
  auto const fsm = parse_kiss2( read_source( o.input, in ), Kiss2Options{ o.strict } );
  auto const result = synthesize_controller( fsm, parse_profile( o.profile ), ControllerOptions{ o.minimize } );
  if ( !o.encoding.empty() )
    write_file( o.encoding, emit_encoding( result.image.layout ) );
  out << emit_fusemap( result.image.state );
  err << to_string( result.report );
  return exit_ok;
}

int cmd_fsmsim( Options const& o, std::istream& in, std::ostream& out )
{
  if ( o.input == "-" && o.vectors == "-" )
    throw argument_error( "fuse map and vectors cannot both come from stdin" );
  ControllerImage image{ parse_fusemap( read_source( o.input, in ) ), parse_encoding( read_source( o.encoding, in ) ) };
  auto const vectors = parse_vectors( read_source( o.vectors, in ), image.layout.num_inputs );
  out << format_trace( simulate_controller( image, vectors ), image.layout.encoding );
  return exit_ok;
}

int cmd_fault( Options const& o, std::istream& in, std::ostream& out )
{
  if ( o.all_faults == !o.faults.empty() )
    throw argument_error( "give either --fault SPEC or --all" );
  auto const state = parse_fusemap( read_source( o.input, in ) );

  std::vector<FaultResult> results;
  if ( o.all_faults )
    results = classify_faults( state );
  else
    for ( auto const& spec : o.faults )
    {
      auto const f = parse_fault( spec );
      results.push_back( { f, find_test_vector( state, f ) } );
    }

  std::size_t detected = 0;
  for ( auto const& r : results )
  {
    out << to_string( r.fault ) << ' ';
    if ( r.test_vector )
    {
      ++detected;
      out << "detected " << to_string( *r.test_vector ) << '\n';
    }
    else
    {
      out << "undetectable\n";
    }
  }
  if ( o.all_faults )
    out << "coverage " << detected << '/' << results.size() << " detectable, " << results.size() - detected
        << " undetectable\n";
  return o.fail_on_detect && detected > 0 ? exit_mismatch : exit_ok;
}

} // namespace

PlaProfile parse_profile( std::string_view spec )
{
  std::vector<std::string_view> parts;
  for ( std::size_t start = 0;; )
  {
    auto const colon = spec.find( ':', start );
    parts.push_back( spec.substr( start, colon - start ) );
    if ( colon == std::string_view::npos )
      break;
    start = colon + 1;
  }

  auto const dims = parts.front();
  auto const p_pos = dims.find( 'p' );
  auto const m_pos = dims.find( 'm' );
  if ( dims.empty() || dims.front() != 'n' || p_pos == std::string_view::npos || m_pos == std::string_view::npos ||
       m_pos < p_pos )
    throw argument_error( "malformed profile '" + std::string( spec ) + "', expected nXpYmZ[:fuse|antifuse][:xor]" );

  PlaProfile prof;
  prof.n_inputs = parse_positive( dims.substr( 1, p_pos - 1 ), spec );
  prof.n_terms = parse_positive( dims.substr( p_pos + 1, m_pos - p_pos - 1 ), spec );
  prof.n_outputs = parse_positive( dims.substr( m_pos + 1 ), spec );

  bool seen_tech = false;
  for ( std::size_t i = 1; i < parts.size(); ++i )
  {
    if ( ( parts[i] == "fuse" || parts[i] == "antifuse" ) && !seen_tech )
    {
      prof.tech = parts[i] == "fuse" ? switch_tech::fuse : switch_tech::antifuse;
      seen_tech = true;
    }
    else if ( parts[i] == "xor" && !prof.has_output_xor )
      prof.has_output_xor = true;
    else
      throw argument_error( "unknown profile option '" + std::string( parts[i] ) + "'" );
  }
  prof.validate();
  return prof;
}

int run( std::vector<std::string> const& args, std::istream& in, std::ostream& out, std::ostream& err )
{
  Options o;
  CLI::App app{ "Two-level logic synthesis for programmable logic arrays", "plakit" };
  app.require_subcommand( 1 );

  auto* table = app.add_subcommand( "table", "Print the truth table of an expression" );
  table->add_option( "expr", o.expr, "Expression, e.g. \"A'BC + AB'C\"" )->required();
  table->add_option( "--order", o.order, "Comma-separated variable order" );
  table->add_option( "--name", o.name, "Output column header" );
  table->add_flag( "--multi-letter", o.multi_letter, "Multi-letter identifiers, explicit '*' for AND" );

  auto* synth = app.add_subcommand( "synth", "Equations file to Berkeley .pla" );
  synth->add_option( "equations", o.input, "Equations file ('-' for stdin)" );
  synth->add_flag( "--minimize", o.minimize, "Two-level minimization" );
  synth->add_option( "--order", o.order, "Comma-separated input order" );
  synth->add_flag( "--multi-letter", o.multi_letter, "Multi-letter identifiers" );

  auto* compile_cmd = app.add_subcommand( "compile", "Equations file to fuse map (report on stderr)" );
  compile_cmd->add_option( "equations", o.input, "Equations file ('-' for stdin)" );
  compile_cmd->add_option( "--profile", o.profile, "Device profile nXpYmZ[:fuse|antifuse][:xor]" )->required();
  compile_cmd->add_flag( "--minimize", o.minimize, "Two-level minimization" );
  compile_cmd->add_option( "--polarity", o.polarity, "Outputs to complement through the output XOR" )->delimiter( ',' )->allow_extra_args( false );
  compile_cmd->add_option( "--order", o.order, "Comma-separated input order" );
  compile_cmd->add_flag( "--multi-letter", o.multi_letter, "Multi-letter identifiers" );

  auto* sim = app.add_subcommand( "sim", "Evaluate a fuse map on input vectors" );
  sim->add_option( "fusemap", o.input, "Fuse map ('-' for stdin)" );
  sim->add_option( "--vectors", o.vectors, "Vector file, or 'all' for every input vector" )->required();
  sim->add_flag( "--echo", o.echo, "Print each input vector before its outputs" );

  auto* verify = app.add_subcommand( "verify", "Exhaustively check a fuse map against equations" );
  verify->add_option( "fusemap", o.input, "Fuse map" )->required();
  verify->add_option( "equations", o.second, "Equations file" )->required();
  verify->add_flag( "--multi-letter", o.multi_letter, "Multi-letter identifiers" );

  auto* diagram = app.add_subcommand( "diagram", "Render a fuse map as a crosspoint grid" );
  diagram->add_option( "fusemap", o.input, "Fuse map ('-' for stdin)" );
  diagram->add_flag( "--color", o.color, "Highlight connections (disabled when NO_COLOR is set)" );

  auto* fsm = app.add_subcommand( "fsm", "KISS2 state table to controller fuse map" );
  fsm->add_option( "kiss2", o.input, "KISS2 file ('-' for stdin)" );
  fsm->add_option( "--profile", o.profile, "Device profile nXpYmZ[:fuse|antifuse][:xor]" )->required();
  fsm->add_option( "--encoding", o.encoding, "Write the state encoding sidecar to this file" );
  fsm->add_flag( "--minimize", o.minimize, "Minimize using unused state codes as don't-cares" );
  fsm->add_flag( "--strict", o.strict, "Reject unspecified (state, input) combinations" );

  auto* fsmsim = app.add_subcommand( "fsmsim", "Clock a controller fuse map through input vectors" );
  fsmsim->add_option( "fusemap", o.input, "Fuse map ('-' for stdin)" );
  fsmsim->add_option( "--encoding", o.encoding, "State encoding sidecar" )->required();
  fsmsim->add_option( "--vectors", o.vectors, "Input vector file" )->required();

  auto* fault = app.add_subcommand( "fault", "Single stuck-crosspoint fault analysis" );
  fault->add_option( "fusemap", o.input, "Fuse map ('-' for stdin)" );
  fault->add_option( "--fault", o.faults, "Fault PLANE:row:col:0|1 (repeatable)" )->allow_extra_args( false );
  fault->add_flag( "--all", o.all_faults, "Classify every single stuck-crosspoint fault" );
  fault->add_flag( "--fail-on-detect", o.fail_on_detect, "Exit 1 if any fault is detectable" );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( CLI::CallForHelp const& e )
  {
    app.exit( e, out, err );
    return exit_ok;
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    app.exit( e, out, err );
    return exit_ok;
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e, err, err );
    return exit_usage;
  }

  try
  {
    if ( table->parsed() )
      return cmd_table( o, out );
    if ( synth->parsed() )
      return cmd_synth( o, in, out );
    if ( compile_cmd->parsed() )
      return cmd_compile( o, in, out, err );
    if ( sim->parsed() )
      return cmd_sim( o, in, out );
    if ( verify->parsed() )
      return cmd_verify( o, in, out );
    if ( diagram->parsed() )
      return cmd_diagram( o, in, out );
    if ( fsm->parsed() )
      return cmd_fsm( o, in, out, err );
    if ( fsmsim->parsed() )
      return cmd_fsmsim( o, in, out );
    if ( fault->parsed() )
      return cmd_fault( o, in, out );
  }
  catch ( capacity_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_capacity;
  }
  catch ( parse_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_format;
  }
  catch ( format_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_format;
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace plakit::cli
