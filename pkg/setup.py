from setuptools import find_packages, setup

setup(
    name="ptspectra",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={
        'console_scripts': [
            'ptspectra=PTSpectra.run:main',
        ],
    },
    python_requires='>=3.10',
    description="Spectra and classical paths of the PT-symmetric family p^2 + m^2 x^2 - (ix)^N",
    long_description=open('README.md').read(),
    long_description_content_type="text/markdown",
)
