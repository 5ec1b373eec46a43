#include <plakit/expr.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <cctype>
#include <utility>

namespace plakit
{

namespace
{

bool is_alpha( char c ) { return std::isalpha( static_cast<unsigned char>( c ) ) != 0; }
bool is_digit( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ) != 0; }
bool is_word( char c ) { return is_alpha( c ) || is_digit( c ) || c == '_'; }

} // namespace

bool is_identifier( std::string_view name )
{
  if ( name.empty() || !is_alpha( name.front() ) )
    return false;
  return std::all_of( name.begin(), name.end(), is_word );
}

VarOrder::VarOrder( std::vector<std::string> names )
{
  for ( auto& n : names )
  {
    if ( !is_identifier( n ) )
      throw argument_error( "invalid variable name '" + n + "'" );
    if ( contains( n ) )
      throw argument_error( "duplicate variable '" + n + "' in order" );
    names_.push_back( std::move( n ) );
  }
}

std::optional<std::size_t> VarOrder::index_of( std::string_view name ) const
{
  auto it = std::find( names_.begin(), names_.end(), name );
  if ( it == names_.end() )
    return std::nullopt;
  return static_cast<std::size_t>( it - names_.begin() );
}

void VarOrder::add( std::string const& name )
{
  if ( contains( name ) )
    return;
  if ( !is_identifier( name ) )
    throw argument_error( "invalid variable name '" + name + "'" );
  names_.push_back( name );
}

/* ---------------------------------------------------------------------- */

Expr Expr::constant( bool value )
{
  Expr e;
  e.kind_ = expr_kind::constant;
  e.value_ = value;
  return e;
}

Expr Expr::variable( std::string name )
{
  if ( name.empty() )
    throw argument_error( "empty variable name" );
  Expr e;
  e.kind_ = expr_kind::variable;
  e.name_ = std::move( name );
  return e;
}

Expr Expr::negate( Expr child )
{
  if ( child.kind_ == expr_kind::negation )
    return std::move( child.children_.front() );
  Expr e;
  e.kind_ = expr_kind::negation;
  e.children_.push_back( std::move( child ) );
  return e;
}

namespace
{

Expr make_nary( expr_kind kind, std::vector<Expr> children, bool identity, auto make )
{
  std::vector<Expr> flat;
  for ( auto& c : children )
  {
    if ( c.kind() == kind )
    {
      for ( auto const& g : c.children() )
        flat.push_back( g );
    }
    else
    {
      flat.push_back( std::move( c ) );
    }
  }
  if ( flat.empty() )
    return Expr::constant( identity );
  if ( flat.size() == 1u )
    return std::move( flat.front() );
  return make( std::move( flat ) );
}

} // namespace

Expr Expr::conjunction( std::vector<Expr> children )
{
  return make_nary( expr_kind::conjunction, std::move( children ), true, []( std::vector<Expr> flat ) {
    Expr e;
    e.kind_ = expr_kind::conjunction;
    e.children_ = std::move( flat );
    return e;
  } );
}

Expr Expr::disjunction( std::vector<Expr> children )
{
  return make_nary( expr_kind::disjunction, std::move( children ), false, []( std::vector<Expr> flat ) {
    Expr e;
    e.kind_ = expr_kind::disjunction;
    e.children_ = std::move( flat );
    return e;
  } );
}

/* ---------------------------------------------------------------------- */

namespace
{

enum class token_kind
{
  ident,
  constant,
  plus,
  and_op,
  bang,
  apostrophe,
  lparen,
  rparen,
  end
};

struct Token
{
  token_kind kind;
  std::size_t offset;
  std::size_t length;
  std::string text;
};

class Lexer
{
public:
  Lexer( std::string_view text, ParseOptions options ) : text_( text ), options_( options ) {}

  Token next()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
    std::size_t const start = pos_;
    if ( pos_ >= text_.size() )
      return { token_kind::end, start, 0, {} };

    char const c = text_[pos_];
    auto single = [&]( token_kind k ) {
      ++pos_;
      return Token{ k, start, 1, std::string( 1, c ) };
    };

    switch ( c )
    {
    case '+':
      return single( token_kind::plus );
    case '*':
    case '.':
      return single( token_kind::and_op );
    case '!':
      return single( token_kind::bang );
    case '\'':
      return single( token_kind::apostrophe );
    case '(':
      return single( token_kind::lparen );
    case ')':
      return single( token_kind::rparen );
    default:
      break;
    }

    // U+00B7 middle dot, U+2019 right single quotation mark
    if ( text_.substr( pos_, 2 ) == "\xC2\xB7" )
    {
      pos_ += 2;
      return { token_kind::and_op, start, 2, "\xC2\xB7" };
    }
    if ( text_.substr( pos_, 3 ) == "\xE2\x80\x99" )
    {
      pos_ += 3;
      return { token_kind::apostrophe, start, 3, "'" };
    }

    if ( c == '0' || c == '1' )
    {
      bool const glued_before = start > 0 && is_word( text_[start - 1] );
      bool const glued_after = start + 1 < text_.size() && is_word( text_[start + 1] );
      if ( glued_before || glued_after )
        throw parse_error( "constant adjacent to identifier", start );
      ++pos_;
      return { token_kind::constant, start, 1, std::string( 1, c ) };
    }

    if ( is_alpha( c ) )
    {
      if ( !options_.multi_letter )
      {
        ++pos_;
        return { token_kind::ident, start, 1, std::string( 1, c ) };
      }
      while ( pos_ < text_.size() && is_word( text_[pos_] ) )
        ++pos_;
      return { token_kind::ident, start, pos_ - start, std::string( text_.substr( start, pos_ - start ) ) };
    }

    throw parse_error( std::string( "unexpected character '" ) + c + "'", start );
  }

private:
  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

class Parser
{
public:
  Parser( std::string_view text, ParseOptions options ) : lexer_( text, options ), options_( options )
  {
    advance();
  }

  Expr parse()
  {
    if ( current_.kind == token_kind::end )
      throw parse_error( "empty expression", current_.offset );
    Expr e = parse_or();
    if ( current_.kind == token_kind::rparen )
      throw parse_error( "unbalanced parentheses: unexpected ')'", current_.offset );
    if ( current_.kind != token_kind::end )
      throw parse_error( "unexpected '" + current_.text + "'", current_.offset );
    return e;
  }

private:
  void advance() { current_ = lexer_.next(); }

  bool starts_operand() const
  {
    switch ( current_.kind )
    {
    case token_kind::ident:
    case token_kind::constant:
    case token_kind::bang:
    case token_kind::lparen:
      return true;
    default:
      return false;
    }
  }

  Expr parse_or()
  {
    std::vector<Expr> terms;
    terms.push_back( parse_and() );
    while ( current_.kind == token_kind::plus )
    {
      advance();
      terms.push_back( parse_and() );
    }
    return Expr::disjunction( std::move( terms ) );
  }

  Expr parse_and()
  {
    std::vector<Expr> factors;
    factors.push_back( parse_unary() );
    for ( ;; )
    {
      if ( current_.kind == token_kind::and_op )
      {
        advance();
        factors.push_back( parse_unary() );
      }
      else if ( starts_operand() )
      {
        if ( options_.multi_letter )
          throw parse_error( "missing '*' between operands in multi-letter mode", current_.offset );
        factors.push_back( parse_unary() );
      }
      else
      {
        break;
      }
    }
    return Expr::conjunction( std::move( factors ) );
  }

  Expr parse_unary()
  {
    if ( current_.kind == token_kind::bang )
    {
      advance();
      return Expr::negate( parse_unary() );
    }
    Expr e = parse_primary();
    while ( current_.kind == token_kind::apostrophe )
    {
      advance();
      e = Expr::negate( std::move( e ) );
    }
    return e;
  }

  Expr parse_primary()
  {
    Token const tok = current_;
    switch ( tok.kind )
    {
    case token_kind::ident:
      advance();
      return Expr::variable( tok.text );
    case token_kind::constant:
      advance();
      return Expr::constant( tok.text == "1" );
    case token_kind::lparen:
    {
      advance();
      if ( current_.kind == token_kind::rparen )
        throw parse_error( "empty operand", current_.offset );
      Expr e = parse_or();
      if ( current_.kind != token_kind::rparen )
        throw parse_error( "unbalanced parentheses: '(' at offset " + std::to_string( tok.offset ) + " not closed",
                           current_.offset );
      advance();
      return e;
    }
    case token_kind::apostrophe:
      throw parse_error( "apostrophe without operand", tok.offset );
    case token_kind::rparen:
      throw parse_error( "unbalanced parentheses: unexpected ')'", tok.offset );
    default:
      throw parse_error( "empty operand", tok.offset );
    }
  }

  Lexer lexer_;
  ParseOptions options_;
  Token current_{};
};

bool all_single_letter( Expr const& e )
{
  if ( e.kind() == expr_kind::variable )
    return e.name().size() == 1u;
  return std::all_of( e.children().begin(), e.children().end(), all_single_letter );
}

std::string format_node( Expr const& e, bool juxtapose )
{
  switch ( e.kind() )
  {
  case expr_kind::constant:
    return e.value() ? "1" : "0";
  case expr_kind::variable:
    return e.name();
  case expr_kind::negation:
  {
    Expr const& c = e.children().front();
    if ( c.kind() == expr_kind::variable || c.kind() == expr_kind::constant )
      return format_node( c, juxtapose ) + "'";
    return "(" + format_node( c, juxtapose ) + ")'";
  }
  case expr_kind::conjunction:
  {
    std::string out;
    for ( auto const& c : e.children() )
    {
      std::string part = format_node( c, juxtapose );
      if ( c.kind() == expr_kind::disjunction )
        part = "(" + part + ")";
      if ( !out.empty() )
      {
        // a digit may not touch a letter or another digit
        bool const glued = is_word( out.back() ) && is_word( part.front() ) &&
                           ( is_digit( out.back() ) || is_digit( part.front() ) );
        if ( !juxtapose || glued )
          out += '*';
      }
      out += part;
    }
    return out;
  }
  case expr_kind::disjunction:
  {
    std::string out;
    for ( auto const& c : e.children() )
    {
      if ( !out.empty() )
        out += " + ";
      out += format_node( c, juxtapose );
    }
    return out;
  }
  }
  return {};
}

void collect_variables( Expr const& e, VarOrder& order )
{
  if ( e.kind() == expr_kind::variable )
  {
    order.add( e.name() );
    return;
  }
  for ( auto const& c : e.children() )
    collect_variables( c, order );
}

} // namespace

Expr parse_expression( std::string_view text, ParseOptions const& options )
{
  return Parser( text, options ).parse();
}

std::string format( Expr const& expr )
{
  return format_node( expr, all_single_letter( expr ) );
}

bool eval( Expr const& expr, Assignment const& assignment )
{
  switch ( expr.kind() )
  {
  case expr_kind::constant:
    return expr.value();
  case expr_kind::variable:
  {
    auto it = assignment.find( expr.name() );
    if ( it == assignment.end() )
      throw argument_error( "unbound variable '" + expr.name() + "'" );
    return it->second;
  }
  case expr_kind::negation:
    return !eval( expr.children().front(), assignment );
  case expr_kind::conjunction:
    return std::all_of( expr.children().begin(), expr.children().end(),
                        [&]( Expr const& c ) { return eval( c, assignment ); } );
  case expr_kind::disjunction:
    return std::any_of( expr.children().begin(), expr.children().end(),
                        [&]( Expr const& c ) { return eval( c, assignment ); } );
  }
  return false;
}

VarOrder variables( Expr const& expr )
{
  VarOrder order;
  collect_variables( expr, order );
  return order;
}

VarOrder variables( std::vector<Equation> const& equations )
{
  VarOrder order;
  for ( auto const& eq : equations )
    collect_variables( eq.expr, order );
  return order;
}

std::vector<Equation> parse_equations( std::string_view text, ParseOptions const& options )
{
  std::vector<Equation> result;
  std::size_t line_no = 0;
  while ( !text.empty() )
  {
    ++line_no;
    auto const nl = text.find( '\n' );
    std::string_view line = text.substr( 0, nl );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );

    if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0, hash );
    auto const first = line.find_first_not_of( " \t\r" );
    if ( first == std::string_view::npos )
      continue;

    auto const eq = line.find( '=' );
    if ( eq == std::string_view::npos )
      throw format_error( "expected 'NAME = expression'", line_no );

    std::string_view name = line.substr( 0, eq );
    name.remove_prefix( std::min( name.find_first_not_of( " \t" ), name.size() ) );
    name = name.substr( 0, name.find_last_not_of( " \t" ) + 1 );
    if ( !is_identifier( name ) )
      throw format_error( "invalid output name '" + std::string( name ) + "'", line_no );
    if ( std::any_of( result.begin(), result.end(), [&]( Equation const& e ) { return e.name == name; } ) )
      throw format_error( "duplicate output '" + std::string( name ) + "'", line_no );

    std::string_view body = line.substr( eq + 1 );
    try
    {
      result.push_back( { std::string( name ), parse_expression( body, options ) } );
    }
    catch ( parse_error const& e )
    {
      throw format_error( e.detail() + " at column " + std::to_string( eq + 2 + e.offset() ), line_no );
    }
  }
  return result;
}

} // namespace plakit
