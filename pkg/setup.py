from pathlib import Path
from setuptools import setup

with open('README.md') as fd:
    DESCRIPTION = fd.read()

CLASSIFIERS = [
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
    'Programming Language :: Python :: 3.8',
    'Topic :: Scientific/Engineering :: Mathematics',
]

packages = [str(mod.parent) for mod in Path('cdii').rglob('__init__.py')]

setup(
    name='cdii-pinns',
    version='1.0a.dev1',
    description='Conductivity recovery from current density data with physics-informed networks',
    long_description=DESCRIPTION,
    long_description_content_type='text/markdown',
    license='LGPL',
    platforms=['any'],
    packages=packages,
    python_requires='>=3.8',
    install_requires=['numpy>=1.20', 'scipy>=1.4'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['cdii=cdii.cli:main']},
    classifiers=CLASSIFIERS
)
