#
# Sphinx config file for freshvar project.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os


def get_version(version_file):
    """
    Execute the specified version file and return the value of the __version__
    global variable that is set in the version file.
    Note: Make sure the version file does not depend on any packages in the
    requirements list of this package (otherwise it cannot be executed in
    a fresh Python environment).
    """
    with open(version_file, 'r') as fp:
        version_source = fp.read()
    _globals = {}
    exec(version_source, _globals)
    return _globals['__version__']


rst_prolog = ""

# The package is imported by autodoc from the repo root.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

needs_sphinx = '3.5'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx_rtd_theme',
]

templates_path = ['_templates']
source_suffix = '.rst'
source_encoding = 'utf-8'

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'
if on_rtd:
    master_doc = 'index'
else:
    master_doc = 'docs/index'

project = u'freshvar'
author = u"The freshvar authors"
_short_description = u"Fresh-variable automata over infinite alphabets"

# Note: We use the full version in both cases (e.g. 'M.N.U' or 'M.N.U.dev0').
version = get_version(os.path.join('..', 'freshvar', '_version.py'))
release = version

language = 'en'

exclude_patterns = ["/tests/*", "/design/*"]

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_special_with_doc = True

add_module_names = False
pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'navigation_depth': 3,
}
html_static_path = []
html_show_sourcelink = True
html_show_sphinx = True
html_show_copyright = False
htmlhelp_basename = 'freshvar_doc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'freshvar', _short_description, [author], 1)
]

# -- Options for autodoc extension ----------------------------------------

autoclass_content = "both"
autodoc_member_order = "bysource"
autodoc_default_options = {
    'members': True,
}

# -- Options for intersphinx extension ------------------------------------

intersphinx_mapping = {
    'py': ('https://docs.python.org/3', None),
    'networkx': ('https://networkx.org/documentation/stable/', None),
}

intersphinx_cache_limit = 5
