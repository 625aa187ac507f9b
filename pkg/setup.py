from setuptools import setup, find_packages

from psmear import __version__, PROJECT, AUTHOR

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name=PROJECT,
    version=__version__,
    description='Smeared coordinates on Hermite grids: metrics, positivity domains, Dyson maps and quadrature.',
    author=AUTHOR,
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    keywords='psmear, quasi-hermitian, metric operator, hermite grid, gauss-hermite quadrature, dyson map',
    packages=find_packages(exclude=['examples', 'examples.*']),
    zip_safe=False,
    python_requires='>=3.7',
    install_requires=list(filter(None, open('requirements.txt').read().split('\n'))),
    entry_points={
        'console_scripts': [
            'psmear=psmear.cli:main',
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3.7",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
