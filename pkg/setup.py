from setuptools import find_packages
from setuptools import setup

setup(
    author='liouvillelab developers',
    #classifiers=[],
    description='Krein strings and gap diffusions of boundary Liouville'
    ' measures',
    entry_points={'console_scripts': ['liouvillelab = liouvillelab.cli:main']},
    install_requires=['numpy', 'scipy', 'lockfile', 'blinker'],
    #include_package_data=True,
    #keywords=[],
    license='PSF',
    name='liouvillelab',
    platforms='any',
    packages=find_packages(exclude=['tests']),
    test_suite='nose.collector',
    tests_require=['nose'],
    version='0.1.0',
    #zip_safe=False
)
