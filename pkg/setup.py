from setuptools import setup

with open("README.md", "r", encoding='utf8') as fh:
    long_description = fh.read()

setup(
    name='latscat',
    version='0.1.0',
    description='Light scattering from ultracold bosons in optical lattices: '
                'Wannier overlaps, mean-field and exact ground states, '
                'angular scans and phase maps.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    packages=['latscat'],
    python_requires='>=3.8',
    install_requires=['numpy', 'scipy', 'tenacity'],
    entry_points={
        'console_scripts': ['latscat = latscat.cli:main'],
    },
    test_suite='tests',
    tests_require=['coverage'],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Physics'
    ],
    zip_safe=False
)
