import click

from src.cli import views
from src.core.config import get_settings
from src.core.descriptions import get_command_metadata
from src.core.loggers import setup_logging

# Set up the loggers.
logger_settings = {
    "LOG_LEVEL": get_settings().LOG_LEVEL,
    "LOGGING_FILE": get_settings().LOGGING_FILE,
    "LOGGER_ENGINE_NAME": get_settings().LOGGER_ENGINE_NAME,
    "LOGGER_CLI_NAME": get_settings().LOGGER_CLI_NAME,
}
setup_logging(logger_settings=logger_settings)

epilog = "\n\n".join(f"{group['name']}: {group['description']}" for group in get_command_metadata())


@click.group(name=get_settings().APP_NAME, epilog=epilog)
@click.version_option("0.1.0", prog_name=get_settings().APP_NAME)
def cli() -> None:
    """Regular matching for languages of finite and infinite trees."""


for command in views.commands:
    cli.add_command(command)

if __name__ == "__main__":
    cli()
