"""
Main entry point for the museum relevance engine command line.
"""
from museum.commands import cli

if __name__ == '__main__':
    # Config comes from --config, $MUSEUM_CONFIG or ./museum.toml
    cli(prog_name='museum')
