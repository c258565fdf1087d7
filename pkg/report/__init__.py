from .algebra_file import algebra_document, parse_algebra, parse_algebra_text, write_algebra
from .render import Report, Section, machine_value, parse_machine, render_json, render_text
