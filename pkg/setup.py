"""
Setup script for the bagwhisker package and its command line.

Usage:
    pip install .
    bagwhisker --input data.csv --output figure.svg
"""

from setuptools import find_packages, setup

from bagwhisker import __version__

setup(
    name='bagwhisker',
    version=__version__,
    description='Bag-and-whisker plots for bivariate data',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.7',
        'statsmodels>=0.13',
    ],
    extras_require={
        'test': ['pytest>=7.0'],
    },
    entry_points={
        'console_scripts': [
            'bagwhisker=bagwhisker.main:main',
        ],
    },
)
