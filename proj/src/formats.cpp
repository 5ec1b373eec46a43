#include <plakit/fit.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace plakit
{

namespace
{

struct Line
{
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines( std::string_view text )
{
  std::vector<Line> lines;
  std::size_t number = 0;
  while ( !text.empty() )
  {
    auto const nl = text.find( '\n' );
    auto line = text.substr( 0, nl );
    if ( !line.empty() && line.back() == '\r' )
      line.remove_suffix( 1 );
    lines.push_back( { ++number, line } );
    if ( nl == std::string_view::npos )
      break;
    text.remove_prefix( nl + 1 );
  }
  return lines;
}

std::vector<std::string_view> tokens( std::string_view line )
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' ) )
      ++i;
    auto const start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' )
      ++i;
    if ( i > start )
      out.push_back( line.substr( start, i - start ) );
  }
  return out;
}

std::size_t parse_count( std::string_view s, std::size_t line, char const* what )
{
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
    throw format_error( std::string( "malformed " ) + what + " '" + std::string( s ) + "'", line );
  return v;
}

std::string join( std::vector<std::string> const& names )
{
  std::string out;
  for ( auto const& n : names )
  {
    if ( !out.empty() )
      out += ' ';
    out += n;
  }
  return out;
}

std::vector<std::string> name_list( std::vector<std::string_view> const& toks, std::size_t expected, std::size_t line,
                                    char const* what )
{
  if ( toks.size() - 1 != expected )
    throw format_error( std::string( what ) + " lists " + std::to_string( toks.size() - 1 ) + " names, expected " +
                            std::to_string( expected ),
                        line );
  std::vector<std::string> names;
  for ( std::size_t i = 1; i < toks.size(); ++i )
  {
    if ( !is_identifier( toks[i] ) )
      throw format_error( std::string( "invalid name '" ) + std::string( toks[i] ) + "' in " + what, line );
    names.emplace_back( toks[i] );
  }
  return names;
}

/// Sequential reader over significant lines with truncation reporting.
class LineCursor
{
public:
  explicit LineCursor( std::vector<Line> lines ) : lines_( std::move( lines ) ) {}

  bool at_end() const { return pos_ >= lines_.size(); }
  Line const& peek() const
  {
    if ( at_end() )
      throw format_error( "truncated document", lines_.empty() ? 0 : lines_.back().number );
    return lines_[pos_];
  }
  Line const& next()
  {
    auto const& l = peek();
    ++pos_;
    return l;
  }

private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<bool> bit_row( Line const& line, std::size_t width, char const* what )
{
  if ( line.text.size() != width )
    throw format_error( std::string( what ) + " row has " + std::to_string( line.text.size() ) + " bits, expected " +
                            std::to_string( width ),
                        line.number );
  std::vector<bool> bits;
  for ( char c : line.text )
  {
    if ( c != '0' && c != '1' )
      throw format_error( std::string( "illegal character '" ) + c + "' in " + what + " row", line.number );
    bits.push_back( c == '1' );
  }
  return bits;
}

} // namespace

/* ---------------------------------------------------------------------- */

std::string emit_fusemap( PlaState const& state )
{
  auto const& prof = state.profile();
  std::ostringstream out;
  out << "PLAFUSE 1\n";
  out << "TECH " << ( prof.tech == switch_tech::fuse ? "fuse" : "antifuse" ) << " XOR "
      << ( prof.has_output_xor ? 1 : 0 ) << '\n';
  out << "DIM " << prof.n_inputs << ' ' << prof.n_terms << ' ' << prof.n_outputs << '\n';
  if ( !state.input_names().empty() )
    out << "ILB " << join( state.input_names() ) << '\n';
  if ( !state.output_names().empty() )
    out << "OB " << join( state.output_names() ) << '\n';
  out << "AND\n";
  for ( std::size_t r = 0; r < prof.n_terms; ++r )
  {
    for ( std::size_t c = 0; c < 2 * prof.n_inputs; ++c )
      out << ( state.and_bit( r, c ) ? '1' : '0' );
    out << '\n';
  }
  out << "OR\n";
  for ( std::size_t o = 0; o < prof.n_outputs; ++o )
  {
    for ( std::size_t r = 0; r < prof.n_terms; ++r )
      out << ( state.or_bit( r, o ) ? '1' : '0' );
    out << '\n';
  }
  if ( prof.has_output_xor )
  {
    out << "POL ";
    for ( std::size_t o = 0; o < prof.n_outputs; ++o )
      out << ( state.polarity( o ) ? '1' : '0' );
    out << '\n';
  }
  out << "END\n";
  return out.str();
}

PlaState parse_fusemap( std::string_view text )
{
  LineCursor cur( split_lines( text ) );

  auto magic = cur.next();
  if ( magic.text != "PLAFUSE 1" )
    throw format_error( "malformed header: expected 'PLAFUSE 1'", magic.number );

  PlaProfile prof;
  auto tech = cur.next();
  auto tt = tokens( tech.text );
  if ( tt.size() != 4u || tt[0] != "TECH" || ( tt[1] != "fuse" && tt[1] != "antifuse" ) || tt[2] != "XOR" ||
       ( tt[3] != "0" && tt[3] != "1" ) )
    throw format_error( "malformed header: expected 'TECH fuse|antifuse XOR 0|1'", tech.number );
  prof.tech = tt[1] == "fuse" ? switch_tech::fuse : switch_tech::antifuse;
  prof.has_output_xor = tt[3] == "1";

  auto dim = cur.next();
  auto dt = tokens( dim.text );
  if ( dt.size() != 4u || dt[0] != "DIM" )
    throw format_error( "malformed header: expected 'DIM <n> <p> <m>'", dim.number );
  prof.n_inputs = parse_count( dt[1], dim.number, "input count" );
  prof.n_terms = parse_count( dt[2], dim.number, "term count" );
  prof.n_outputs = parse_count( dt[3], dim.number, "output count" );
  try
  {
    prof.validate();
  }
  catch ( argument_error const& e )
  {
    throw format_error( std::string( "dimension mismatch: " ) + e.what(), dim.number );
  }

  std::vector<std::string> input_names, output_names;
  if ( auto t = tokens( cur.peek().text ); !t.empty() && t[0] == "ILB" )
    input_names = name_list( t, prof.n_inputs, cur.next().number, "ILB" );
  if ( auto t = tokens( cur.peek().text ); !t.empty() && t[0] == "OB" )
    output_names = name_list( t, prof.n_outputs, cur.next().number, "OB" );

  auto expect = [&]( std::string_view keyword ) {
    auto const& l = cur.next();
    if ( l.text != keyword )
      throw format_error( "expected '" + std::string( keyword ) + "', found '" + std::string( l.text ) + "'",
                          l.number );
  };

  expect( "AND" );
  std::vector<bool> and_plane;
  for ( std::size_t r = 0; r < prof.n_terms; ++r )
  {
    if ( cur.peek().text == "OR" )
      throw format_error( "truncated AND plane: " + std::to_string( r ) + " of " + std::to_string( prof.n_terms ) +
                              " rows",
                          cur.peek().number );
    auto bits = bit_row( cur.next(), 2 * prof.n_inputs, "AND" );
    and_plane.insert( and_plane.end(), bits.begin(), bits.end() );
  }

  expect( "OR" );
  std::vector<bool> or_plane;
  for ( std::size_t o = 0; o < prof.n_outputs; ++o )
  {
    auto const& peeked = cur.peek().text;
    if ( peeked == "END" || peeked.substr( 0, 3 ) == "POL" )
      throw format_error( "truncated OR plane: " + std::to_string( o ) + " of " + std::to_string( prof.n_outputs ) +
                              " rows",
                          cur.peek().number );
    auto bits = bit_row( cur.next(), prof.n_terms, "OR" );
    or_plane.insert( or_plane.end(), bits.begin(), bits.end() );
  }

  std::vector<bool> polarity( prof.n_outputs, false );
  if ( prof.has_output_xor )
  {
    auto const& l = cur.next();
    auto pt = tokens( l.text );
    if ( pt.size() != 2u || pt[0] != "POL" )
      throw format_error( "expected 'POL <bits>'", l.number );
    polarity = bit_row( { l.number, pt[1] }, prof.n_outputs, "POL" );
  }
  expect( "END" );
  while ( !cur.at_end() )
  {
    auto const& l = cur.next();
    if ( !tokens( l.text ).empty() )
      throw format_error( "content after END", l.number );
  }

  return PlaState( prof, std::move( and_plane ), std::move( or_plane ), std::move( polarity ), std::move( input_names ),
                   std::move( output_names ) );
}

/* ---------------------------------------------------------------------- */

MultiOutputCover read_berkeley_pla( std::string_view text, bool strict, std::vector<std::string>* warnings )
{
  std::optional<std::size_t> n_in, n_out, declared_terms;
  std::vector<std::string> in_names, out_names;
  std::vector<Cube> pool;
  std::map<Cube, std::size_t> index;
  std::vector<std::vector<bool>> membership;
  std::size_t cube_lines = 0;
  std::size_t p_line = 0;

  for ( auto const& line : split_lines( text ) )
  {
    auto body = line.text.substr( 0, line.text.find( '#' ) );
    auto toks = tokens( body );
    if ( toks.empty() )
      continue;

    if ( toks[0].front() == '.' )
    {
      auto const kw = toks[0];
      auto arg_count = [&]( char const* what ) {
        if ( toks.size() != 2u )
          throw format_error( std::string( kw ) + " takes one argument", line.number );
        return parse_count( toks[1], line.number, what );
      };
      if ( kw == ".i" )
        n_in = arg_count( "input count" );
      else if ( kw == ".o" )
        n_out = arg_count( "output count" );
      else if ( kw == ".p" )
      {
        declared_terms = arg_count( "term count" );
        p_line = line.number;
      }
      else if ( kw == ".ilb" )
      {
        if ( !n_in )
          throw format_error( ".ilb before .i", line.number );
        in_names = name_list( toks, *n_in, line.number, ".ilb" );
      }
      else if ( kw == ".ob" )
      {
        if ( !n_out )
          throw format_error( ".ob before .o", line.number );
        out_names = name_list( toks, *n_out, line.number, ".ob" );
      }
      else if ( kw == ".type" )
      {
        if ( toks.size() != 2u || toks[1] != "f" )
          throw format_error( "only '.type f' is supported; output don't-cares are not accepted", line.number );
      }
      else if ( kw == ".e" || kw == ".end" )
        break;
      else
        throw format_error( "unknown directive '" + std::string( kw ) + "'", line.number );
      continue;
    }

    if ( !n_in || !n_out )
      throw format_error( "cube before .i and .o", line.number );
    std::string chars;
    for ( auto t : toks )
      chars += t;
    if ( chars.size() != *n_in + *n_out )
      throw format_error( "cube line has " + std::to_string( chars.size() ) + " characters, expected " +
                              std::to_string( *n_in + *n_out ),
                          line.number );
    std::vector<Literal> lits;
    for ( std::size_t j = 0; j < *n_in; ++j )
    {
      switch ( chars[j] )
      {
      case '0':
        lits.push_back( Literal::neg );
        break;
      case '1':
        lits.push_back( Literal::pos );
        break;
      case '-':
        lits.push_back( Literal::absent );
        break;
      default:
        throw format_error( std::string( "illegal input character '" ) + chars[j] + "'", line.number );
      }
    }
    std::vector<bool> outs;
    for ( std::size_t o = 0; o < *n_out; ++o )
    {
      char const c = chars[*n_in + o];
      if ( c == '-' || c == '~' )
        throw format_error( "output don't-care '" + std::string( 1, c ) +
                                "' is not supported; supply don't-cares through minimization instead",
                            line.number );
      if ( c != '0' && c != '1' )
        throw format_error( std::string( "illegal output character '" ) + c + "'", line.number );
      outs.push_back( c == '1' );
    }
    ++cube_lines;

    Cube cube( std::move( lits ) );
    auto [it, inserted] = index.emplace( cube, pool.size() );
    if ( inserted )
    {
      pool.push_back( std::move( cube ) );
      membership.push_back( std::move( outs ) );
    }
    else
    {
      auto& m = membership[it->second];
      for ( std::size_t o = 0; o < outs.size(); ++o )
        m[o] = m[o] || outs[o];
    }
  }

  if ( !n_in || !n_out )
    throw format_error( "missing .i or .o directive" );
  if ( declared_terms && *declared_terms != cube_lines )
  {
    std::string msg = ".p declares " + std::to_string( *declared_terms ) + " terms but " +
                      std::to_string( cube_lines ) + " cube lines were read";
    if ( strict )
      throw format_error( msg, p_line );
    if ( warnings )
      warnings->push_back( msg );
  }

  if ( in_names.empty() )
    for ( std::size_t j = 0; j < *n_in; ++j )
      in_names.push_back( "x" + std::to_string( j ) );
  if ( out_names.empty() )
    for ( std::size_t o = 0; o < *n_out; ++o )
      out_names.push_back( "f" + std::to_string( o ) );

  std::vector<OutputSelection> outputs;
  for ( std::size_t o = 0; o < *n_out; ++o )
  {
    OutputSelection sel{ out_names[o], {} };
    for ( std::size_t t = 0; t < pool.size(); ++t )
      if ( membership[t][o] )
        sel.terms.push_back( t );
    outputs.push_back( std::move( sel ) );
  }
  try
  {
    return MultiOutputCover( VarOrder( in_names ), std::move( pool ), std::move( outputs ) );
  }
  catch ( argument_error const& e )
  {
    throw format_error( e.what() );
  }
}

std::string write_berkeley_pla( MultiOutputCover const& cover )
{
  auto const& outputs = cover.outputs();
  std::ostringstream out;
  out << ".i " << cover.order().size() << '\n';
  out << ".o " << outputs.size() << '\n';
  if ( !cover.order().empty() )
    out << ".ilb " << join( cover.order().names() ) << '\n';
  if ( !outputs.empty() )
  {
    std::vector<std::string> names;
    for ( auto const& o : outputs )
      names.push_back( o.name );
    out << ".ob " << join( names ) << '\n';
  }
  out << ".p " << cover.pool().size() << '\n';
  for ( std::size_t t = 0; t < cover.pool().size(); ++t )
  {
    out << cover.pool()[t].to_string() << ' ';
    for ( auto const& o : outputs )
      out << ( std::find( o.terms.begin(), o.terms.end(), t ) != o.terms.end() ? '1' : '0' );
    out << '\n';
  }
  out << ".e\n";
  return out.str();
}

} // namespace plakit
