//! Declarative command-line schemas.
//!
//! Each schema lists a tool's names, its subcommands, the flags it accepts
//! (and whether each one consumes a value) and the role given to
//! positional arguments. Enrichment walks a simple command against these
//! tables; rules only ever look at the resulting labels.

/// One flag, with all of its spellings.
#[derive(Debug)]
pub struct FlagSpec {
    pub short: &'static [char],
    pub long: &'static [&'static str],
    pub label: &'static str,
    pub takes_value: bool,
    /// Label given to the word holding the flag's value.
    pub value_label: Option<&'static str>,
}

#[derive(Debug)]
pub struct SubSpec {
    pub names: &'static [&'static str],
    pub label: &'static str,
    pub flags: &'static [FlagSpec],
    pub positional: Option<&'static str>,
    pub subcommands: &'static [SubSpec],
}

#[derive(Debug)]
pub struct CommandSchema {
    pub names: &'static [&'static str],
    pub label: &'static str,
    pub flags: &'static [FlagSpec],
    pub subcommands: &'static [SubSpec],
    /// Role of positionals when no subcommand applies (or none exist).
    pub positional: Option<&'static str>,
    /// Subcommand label implied when the command has no positional at all
    /// (`yarn` alone means `yarn install`).
    pub default_subcommand: Option<&'static str>,
    /// Accept clustered short flags such as `-xzf` or `-rf`.
    pub clustered_short: bool,
    /// Accept a dash-less first cluster, as in `tar xzf archive.tgz`.
    pub bare_cluster: bool,
}

impl CommandSchema {
    pub fn find(name: &str) -> Option<&'static CommandSchema> {
        SCHEMAS.iter().find(|s| s.names.contains(&name))
    }
}

/// A command whose real payload is a later word, like `sudo` or `env`.
#[derive(Debug)]
pub struct WrapperPolicy {
    pub names: &'static [&'static str],
    pub label: &'static str,
    /// Options that consume the following word.
    pub valued_options: &'static [&'static str],
    /// Skip `NAME=value` words (env).
    pub skips_assignments: bool,
    /// Options that turn the wrapper into a query with no payload
    /// (`command -v`).
    pub terminal_options: &'static [&'static str],
    /// Accept `-N` numeric options (`nice -10`).
    pub numeric_options: bool,
}

impl WrapperPolicy {
    pub fn find(name: &str) -> Option<&'static WrapperPolicy> {
        WRAPPERS.iter().find(|w| w.names.contains(&name))
    }
}

const fn flag(short: &'static [char], long: &'static [&'static str], label: &'static str) -> FlagSpec {
    FlagSpec {
        short,
        long,
        label,
        takes_value: false,
        value_label: None,
    }
}

const fn valued(short: &'static [char], long: &'static [&'static str], label: &'static str) -> FlagSpec {
    FlagSpec {
        short,
        long,
        label,
        takes_value: true,
        value_label: None,
    }
}

const fn valued_as(
    short: &'static [char],
    long: &'static [&'static str],
    label: &'static str,
    value_label: &'static str,
) -> FlagSpec {
    FlagSpec {
        short,
        long,
        label,
        takes_value: true,
        value_label: Some(value_label),
    }
}

const fn sub(names: &'static [&'static str], label: &'static str) -> SubSpec {
    SubSpec {
        names,
        label,
        flags: &[],
        positional: None,
        subcommands: &[],
    }
}

const fn sub_with(names: &'static [&'static str], label: &'static str, positional: &'static str) -> SubSpec {
    SubSpec {
        names,
        label,
        flags: &[],
        positional: Some(positional),
        subcommands: &[],
    }
}

const fn command(names: &'static [&'static str], label: &'static str) -> CommandSchema {
    CommandSchema {
        names,
        label,
        flags: &[],
        subcommands: &[],
        positional: None,
        default_subcommand: None,
        clustered_short: true,
        bare_cluster: false,
    }
}

const APT_GET_FLAGS: &[FlagSpec] = &[
    flag(&['y'], &["--yes", "--assume-yes"], "SC-APT-GET-F-YES"),
    flag(&['q'], &["--quiet", "--silent"], "SC-APT-GET-F-QUIET"),
    flag(
        &[],
        &["--no-install-recommends"],
        "SC-APT-GET-F-NO-INSTALL-RECOMMENDS",
    ),
    flag(&[], &["--install-recommends"], "SC-APT-GET-F-INSTALL-RECOMMENDS"),
    flag(
        &[],
        &["--no-install-suggests"],
        "SC-APT-GET-F-NO-INSTALL-SUGGESTS",
    ),
    flag(&['f'], &["--fix-broken"], "SC-APT-GET-F-FIX-BROKEN"),
    flag(
        &['m'],
        &["--fix-missing", "--ignore-missing"],
        "SC-APT-GET-F-FIX-MISSING",
    ),
    valued(&['o'], &["--option"], "SC-APT-GET-F-OPTION"),
    valued(&['c'], &["--config-file"], "SC-APT-GET-F-CONFIG-FILE"),
    valued(
        &['t'],
        &["--target-release", "--default-release"],
        "SC-APT-GET-F-TARGET-RELEASE",
    ),
    flag(
        &[],
        &["--allow-unauthenticated"],
        "SC-APT-GET-F-ALLOW-UNAUTHENTICATED",
    ),
    flag(&[], &["--allow-downgrades"], "SC-APT-GET-F-ALLOW-DOWNGRADES"),
    flag(
        &[],
        &["--allow-remove-essential"],
        "SC-APT-GET-F-ALLOW-REMOVE-ESSENTIAL",
    ),
    flag(
        &[],
        &["--allow-change-held-packages"],
        "SC-APT-GET-F-ALLOW-CHANGE-HELD-PACKAGES",
    ),
    flag(&[], &["--force-yes"], "SC-APT-GET-F-FORCE-YES"),
    flag(&[], &["--reinstall"], "SC-APT-GET-F-REINSTALL"),
    flag(&[], &["--no-upgrade"], "SC-APT-GET-F-NO-UPGRADE"),
    flag(&[], &["--only-upgrade"], "SC-APT-GET-F-ONLY-UPGRADE"),
    flag(&[], &["--purge"], "SC-APT-GET-F-PURGE"),
    flag(
        &[],
        &["--auto-remove", "--autoremove"],
        "SC-APT-GET-F-AUTO-REMOVE",
    ),
    flag(&['d'], &["--download-only"], "SC-APT-GET-F-DOWNLOAD-ONLY"),
    flag(
        &['s'],
        &["--simulate", "--dry-run", "--just-print", "--no-act"],
        "SC-APT-GET-F-SIMULATE",
    ),
    flag(&['u'], &["--show-upgraded"], "SC-APT-GET-F-SHOW-UPGRADED"),
    flag(&['V'], &["--verbose-versions"], "SC-APT-GET-F-VERBOSE-VERSIONS"),
    flag(&[], &["--no-download"], "SC-APT-GET-F-NO-DOWNLOAD"),
    flag(
        &[],
        &["--allow-releaseinfo-change"],
        "SC-APT-GET-F-ALLOW-RELEASEINFO-CHANGE",
    ),
];

const APT_GET: CommandSchema = CommandSchema {
    flags: APT_GET_FLAGS,
    subcommands: &[
        sub_with(&["install"], "SC-APT-GET-INSTALL", "SC-APT-GET-PACKAGE"),
        sub(&["update"], "SC-APT-GET-UPDATE"),
        sub(&["upgrade"], "SC-APT-GET-UPGRADE"),
        sub(&["dist-upgrade", "full-upgrade"], "SC-APT-GET-DIST-UPGRADE"),
        sub_with(&["remove"], "SC-APT-GET-REMOVE", "SC-APT-GET-PACKAGE"),
        sub_with(&["purge"], "SC-APT-GET-PURGE", "SC-APT-GET-PACKAGE"),
        sub_with(&["autoremove"], "SC-APT-GET-AUTOREMOVE", "SC-APT-GET-PACKAGE"),
        sub(&["clean"], "SC-APT-GET-CLEAN"),
        sub(&["autoclean", "auto-clean"], "SC-APT-GET-AUTOCLEAN"),
        sub_with(&["build-dep"], "SC-APT-GET-BUILD-DEP", "SC-APT-GET-PACKAGE"),
        sub_with(&["source"], "SC-APT-GET-SOURCE", "SC-APT-GET-PACKAGE"),
        sub_with(&["download"], "SC-APT-GET-DOWNLOAD", "SC-APT-GET-PACKAGE"),
    ],
    ..command(&["apt-get"], "SC-APT-GET")
};

const APT: CommandSchema = CommandSchema {
    flags: &[
        flag(&['y'], &["--yes", "--assume-yes"], "SC-APT-F-YES"),
        flag(&['q'], &["--quiet"], "SC-APT-F-QUIET"),
        flag(
            &[],
            &["--no-install-recommends"],
            "SC-APT-F-NO-INSTALL-RECOMMENDS",
        ),
        flag(&[], &["--no-install-suggests"], "SC-APT-F-NO-INSTALL-SUGGESTS"),
        flag(&['f'], &["--fix-broken"], "SC-APT-F-FIX-BROKEN"),
        valued(&['o'], &["--option"], "SC-APT-F-OPTION"),
        valued(&['t'], &["--target-release"], "SC-APT-F-TARGET-RELEASE"),
    ],
    subcommands: &[
        sub_with(&["install"], "SC-APT-INSTALL", "SC-APT-PACKAGE"),
        sub(&["update"], "SC-APT-UPDATE"),
        sub(&["upgrade", "full-upgrade", "dist-upgrade"], "SC-APT-UPGRADE"),
        sub_with(
            &["remove", "purge", "autoremove"],
            "SC-APT-REMOVE",
            "SC-APT-PACKAGE",
        ),
        sub(&["clean", "autoclean"], "SC-APT-CLEAN"),
    ],
    ..command(&["apt"], "SC-APT")
};

const APK: CommandSchema = CommandSchema {
    flags: &[
        flag(&[], &["--no-cache"], "SC-APK-F-NO-CACHE"),
        flag(&['U'], &["--update-cache", "--update"], "SC-APK-F-UPDATE"),
        valued_as(&['t'], &["--virtual"], "SC-APK-F-VIRTUAL", "SC-APK-VIRTUAL"),
        valued(&['X'], &["--repository"], "SC-APK-F-REPOSITORY"),
        valued(&[], &["--repositories-file"], "SC-APK-F-REPOSITORIES-FILE"),
        valued(&['p'], &["--root"], "SC-APK-F-ROOT"),
        valued(&[], &["--arch"], "SC-APK-F-ARCH"),
        valued(&[], &["--keys-dir"], "SC-APK-F-KEYS-DIR"),
        valued(&[], &["--cache-dir"], "SC-APK-F-CACHE-DIR"),
        flag(&[], &["--allow-untrusted"], "SC-APK-F-ALLOW-UNTRUSTED"),
        flag(&['q'], &["--quiet"], "SC-APK-F-QUIET"),
        flag(&['v'], &["--verbose"], "SC-APK-F-VERBOSE"),
        flag(&[], &["--no-progress"], "SC-APK-F-NO-PROGRESS"),
        flag(&[], &["--purge"], "SC-APK-F-PURGE"),
        flag(&['u'], &["--upgrade"], "SC-APK-F-UPGRADE"),
        flag(&['l'], &["--latest"], "SC-APK-F-LATEST"),
        flag(&[], &["--initdb"], "SC-APK-F-INITDB"),
        flag(&['f'], &["--force"], "SC-APK-F-FORCE"),
        flag(&[], &["--force-broken-world"], "SC-APK-F-FORCE-BROKEN-WORLD"),
        flag(&[], &["--force-overwrite"], "SC-APK-F-FORCE-OVERWRITE"),
        flag(&[], &["--no-scripts"], "SC-APK-F-NO-SCRIPTS"),
        flag(&['s'], &["--simulate"], "SC-APK-F-SIMULATE"),
        flag(&['i'], &["--interactive"], "SC-APK-F-INTERACTIVE"),
        flag(&[], &["--clean-protected"], "SC-APK-F-CLEAN-PROTECTED"),
    ],
    subcommands: &[
        sub_with(&["add"], "SC-APK-ADD", "SC-APK-PACKAGE"),
        sub_with(&["del"], "SC-APK-DEL", "SC-APK-PACKAGE"),
        sub(&["update"], "SC-APK-UPDATE"),
        sub(&["upgrade"], "SC-APK-UPGRADE"),
        sub(&["cache"], "SC-APK-CACHE"),
        sub(&["info"], "SC-APK-INFO"),
        sub(&["fix"], "SC-APK-FIX"),
    ],
    ..command(&["apk"], "SC-APK")
};

const PIP: CommandSchema = CommandSchema {
    flags: &[
        flag(&[], &["--no-cache-dir"], "SC-PIP-F-NO-CACHE-DIR"),
        valued(&['r'], &["--requirement"], "SC-PIP-F-REQUIREMENT"),
        valued(&['c'], &["--constraint"], "SC-PIP-F-CONSTRAINT"),
        valued(&['e'], &["--editable"], "SC-PIP-F-EDITABLE"),
        valued(&['i'], &["--index-url"], "SC-PIP-F-INDEX-URL"),
        valued(&[], &["--extra-index-url"], "SC-PIP-F-EXTRA-INDEX-URL"),
        valued(&['f'], &["--find-links"], "SC-PIP-F-FIND-LINKS"),
        valued(&[], &["--trusted-host"], "SC-PIP-F-TRUSTED-HOST"),
        valued(&['t'], &["--target"], "SC-PIP-F-TARGET"),
        valued(&[], &["--prefix"], "SC-PIP-F-PREFIX"),
        valued(&[], &["--root"], "SC-PIP-F-ROOT"),
        valued(&[], &["--no-binary"], "SC-PIP-F-NO-BINARY"),
        valued(&[], &["--only-binary"], "SC-PIP-F-ONLY-BINARY"),
        valued(&[], &["--progress-bar"], "SC-PIP-F-PROGRESS-BAR"),
        valued(&[], &["--timeout"], "SC-PIP-F-TIMEOUT"),
        valued(&[], &["--retries"], "SC-PIP-F-RETRIES"),
        valued(&[], &["--cache-dir"], "SC-PIP-F-CACHE-DIR"),
        valued(&[], &["--upgrade-strategy"], "SC-PIP-F-UPGRADE-STRATEGY"),
        valued(&[], &["--src"], "SC-PIP-F-SRC"),
        valued(&[], &["--python-version"], "SC-PIP-F-PYTHON-VERSION"),
        valued(&[], &["--platform"], "SC-PIP-F-PLATFORM"),
        flag(&['U'], &["--upgrade"], "SC-PIP-F-UPGRADE"),
        flag(&[], &["--user"], "SC-PIP-F-USER"),
        flag(&['q'], &["--quiet"], "SC-PIP-F-QUIET"),
        flag(&['v'], &["--verbose"], "SC-PIP-F-VERBOSE"),
        flag(&[], &["--pre"], "SC-PIP-F-PRE"),
        flag(&[], &["--no-deps"], "SC-PIP-F-NO-DEPS"),
        flag(&['I'], &["--ignore-installed"], "SC-PIP-F-IGNORE-INSTALLED"),
        flag(&[], &["--force-reinstall"], "SC-PIP-F-FORCE-REINSTALL"),
        flag(&[], &["--no-build-isolation"], "SC-PIP-F-NO-BUILD-ISOLATION"),
        flag(
            &[],
            &["--break-system-packages"],
            "SC-PIP-F-BREAK-SYSTEM-PACKAGES",
        ),
        flag(
            &[],
            &["--disable-pip-version-check"],
            "SC-PIP-F-DISABLE-PIP-VERSION-CHECK",
        ),
        flag(
            &[],
            &["--no-warn-script-location"],
            "SC-PIP-F-NO-WARN-SCRIPT-LOCATION",
        ),
        flag(&[], &["--require-hashes"], "SC-PIP-F-REQUIRE-HASHES"),
        flag(&[], &["--no-index"], "SC-PIP-F-NO-INDEX"),
        flag(&[], &["--compile"], "SC-PIP-F-COMPILE"),
        flag(&[], &["--no-compile"], "SC-PIP-F-NO-COMPILE"),
        flag(&['y'], &["--yes"], "SC-PIP-F-YES"),
        flag(&[], &["--system"], "SC-PIP-F-SYSTEM"),
    ],
    subcommands: &[
        sub_with(&["install"], "SC-PIP-INSTALL", "SC-PIP-PACKAGE"),
        sub_with(&["uninstall"], "SC-PIP-UNINSTALL", "SC-PIP-PACKAGE"),
        sub_with(&["download"], "SC-PIP-DOWNLOAD", "SC-PIP-PACKAGE"),
        sub_with(&["wheel"], "SC-PIP-WHEEL", "SC-PIP-PACKAGE"),
        sub(&["freeze"], "SC-PIP-FREEZE"),
        sub(&["list"], "SC-PIP-LIST"),
        sub(&["show"], "SC-PIP-SHOW"),
        sub(&["config"], "SC-PIP-CONFIG"),
        sub(&["cache"], "SC-PIP-CACHE"),
    ],
    ..command(&["pip", "pip2", "pip3"], "SC-PIP")
};

const NPM: CommandSchema = CommandSchema {
    flags: &[
        flag(&['f'], &["--force"], "SC-NPM-F-FORCE"),
        flag(&['g'], &["--global"], "SC-NPM-F-GLOBAL"),
        flag(&[], &["--production"], "SC-NPM-F-PRODUCTION"),
        flag(&['S'], &["--save"], "SC-NPM-F-SAVE"),
        flag(&['D'], &["--save-dev"], "SC-NPM-F-SAVE-DEV"),
        flag(&['E'], &["--save-exact"], "SC-NPM-F-SAVE-EXACT"),
        flag(&[], &["--no-save"], "SC-NPM-F-NO-SAVE"),
        flag(&[], &["--silent"], "SC-NPM-F-SILENT"),
        flag(&['q'], &["--quiet"], "SC-NPM-F-QUIET"),
        flag(&[], &["--unsafe-perm"], "SC-NPM-F-UNSAFE-PERM"),
        flag(&[], &["--no-optional"], "SC-NPM-F-NO-OPTIONAL"),
        flag(&[], &["--legacy-peer-deps"], "SC-NPM-F-LEGACY-PEER-DEPS"),
        flag(&[], &["--ignore-scripts"], "SC-NPM-F-IGNORE-SCRIPTS"),
        flag(&[], &["--no-audit"], "SC-NPM-F-NO-AUDIT"),
        flag(&[], &["--no-fund"], "SC-NPM-F-NO-FUND"),
        flag(&[], &["--no-package-lock"], "SC-NPM-F-NO-PACKAGE-LOCK"),
        flag(&[], &["--prefer-offline"], "SC-NPM-F-PREFER-OFFLINE"),
        valued(&[], &["--only"], "SC-NPM-F-ONLY"),
        valued(&[], &["--omit"], "SC-NPM-F-OMIT"),
        valued(&[], &["--loglevel"], "SC-NPM-F-LOGLEVEL"),
        valued(&[], &["--registry"], "SC-NPM-F-REGISTRY"),
        valued(&[], &["--prefix"], "SC-NPM-F-PREFIX"),
        valued(&[], &["--cache"], "SC-NPM-F-CACHE"),
    ],
    subcommands: &[
        sub_with(
            &["install", "i", "in", "add", "isntall"],
            "SC-NPM-INSTALL",
            "SC-NPM-PACKAGE",
        ),
        sub(&["ci", "clean-install"], "SC-NPM-CI"),
        SubSpec {
            subcommands: &[
                sub(&["clean"], "SC-NPM-CACHE-CLEAN"),
                sub(&["verify"], "SC-NPM-CACHE-VERIFY"),
                sub(&["ls"], "SC-NPM-CACHE-LS"),
                sub(&["add"], "SC-NPM-CACHE-ADD"),
            ],
            ..sub(&["cache"], "SC-NPM-CACHE")
        },
        sub(&["run", "run-script"], "SC-NPM-RUN"),
        sub_with(
            &["uninstall", "rm", "remove", "un"],
            "SC-NPM-UNINSTALL",
            "SC-NPM-PACKAGE",
        ),
        sub(&["update", "up", "upgrade"], "SC-NPM-UPDATE"),
        sub(&["prune"], "SC-NPM-PRUNE"),
        sub(&["config", "c"], "SC-NPM-CONFIG"),
        sub(&["build"], "SC-NPM-BUILD"),
        sub(&["test", "t"], "SC-NPM-TEST"),
        sub(&["link", "ln"], "SC-NPM-LINK"),
    ],
    ..command(&["npm"], "SC-NPM")
};

const NPX: CommandSchema = command(&["npx"], "SC-NPX");

const YARN: CommandSchema = CommandSchema {
    flags: &[
        flag(&[], &["--frozen-lockfile"], "SC-YARN-F-FROZEN-LOCKFILE"),
        flag(&[], &["--immutable"], "SC-YARN-F-IMMUTABLE"),
        flag(&[], &["--production"], "SC-YARN-F-PRODUCTION"),
        flag(&[], &["--pure-lockfile"], "SC-YARN-F-PURE-LOCKFILE"),
        flag(&[], &["--ignore-scripts"], "SC-YARN-F-IGNORE-SCRIPTS"),
        flag(&[], &["--ignore-engines"], "SC-YARN-F-IGNORE-ENGINES"),
        flag(&[], &["--ignore-optional"], "SC-YARN-F-IGNORE-OPTIONAL"),
        flag(&[], &["--silent"], "SC-YARN-F-SILENT"),
        flag(&[], &["--non-interactive"], "SC-YARN-F-NON-INTERACTIVE"),
        flag(&[], &["--prefer-offline"], "SC-YARN-F-PREFER-OFFLINE"),
        flag(&[], &["--no-progress"], "SC-YARN-F-NO-PROGRESS"),
        flag(&['D'], &["--dev"], "SC-YARN-F-DEV"),
        valued(&[], &["--network-timeout"], "SC-YARN-F-NETWORK-TIMEOUT"),
        valued(&[], &["--cache-folder"], "SC-YARN-F-CACHE-FOLDER"),
        valued(&[], &["--modules-folder"], "SC-YARN-F-MODULES-FOLDER"),
        valued(&[], &["--registry"], "SC-YARN-F-REGISTRY"),
        valued(&[], &["--cwd"], "SC-YARN-F-CWD"),
    ],
    subcommands: &[
        sub(&["install"], "SC-YARN-INSTALL"),
        sub_with(&["add"], "SC-YARN-ADD", "SC-YARN-PACKAGE"),
        SubSpec {
            subcommands: &[sub(&["clean"], "SC-YARN-CACHE-CLEAN")],
            ..sub(&["cache"], "SC-YARN-CACHE")
        },
        SubSpec {
            subcommands: &[sub_with(&["add"], "SC-YARN-GLOBAL-ADD", "SC-YARN-PACKAGE")],
            ..sub(&["global"], "SC-YARN-GLOBAL")
        },
        sub(&["run"], "SC-YARN-RUN"),
        sub(&["build"], "SC-YARN-BUILD"),
        sub_with(&["remove"], "SC-YARN-REMOVE", "SC-YARN-PACKAGE"),
        sub(&["config"], "SC-YARN-CONFIG"),
        sub(&["workspaces", "workspace"], "SC-YARN-WORKSPACE"),
    ],
    default_subcommand: Some("SC-YARN-INSTALL"),
    ..command(&["yarn"], "SC-YARN")
};

const GEM_FLAGS: &[FlagSpec] = &[
    flag(&[], &["--system"], "SC-GEM-F-SYSTEM"),
    flag(&['N'], &["--no-document"], "SC-GEM-F-NO-DOCUMENT"),
    flag(&[], &["--no-ri"], "SC-GEM-F-NO-RI"),
    flag(&[], &["--no-rdoc"], "SC-GEM-F-NO-RDOC"),
    flag(&[], &["--force"], "SC-GEM-F-FORCE"),
    flag(&[], &["--no-user-install"], "SC-GEM-F-NO-USER-INSTALL"),
    flag(&['q'], &["--quiet"], "SC-GEM-F-QUIET"),
    valued(&['v'], &["--version"], "SC-GEM-F-VERSION"),
    valued(&[], &["--source"], "SC-GEM-F-SOURCE"),
    valued(&['i'], &["--install-dir"], "SC-GEM-F-INSTALL-DIR"),
    valued(&[], &["--bindir"], "SC-GEM-F-BINDIR"),
];

const GEM: CommandSchema = CommandSchema {
    flags: GEM_FLAGS,
    subcommands: &[
        sub(&["update"], "SC-GEM-UPDATE"),
        sub_with(&["install", "i"], "SC-GEM-INSTALL", "SC-GEM-PACKAGE"),
        sub_with(&["uninstall"], "SC-GEM-UNINSTALL", "SC-GEM-PACKAGE"),
        sub(&["cleanup"], "SC-GEM-CLEANUP"),
        sub(&["sources"], "SC-GEM-SOURCES"),
    ],
    ..command(&["gem"], "SC-GEM")
};

// dnf is treated as yum: same subcommands and flags.
const YUM: CommandSchema = CommandSchema {
    flags: &[
        flag(&['y'], &["--assumeyes"], "SC-YUM-F-ASSUMEYES"),
        flag(&['q'], &["--quiet"], "SC-YUM-F-QUIET"),
        flag(&[], &["--nogpgcheck"], "SC-YUM-F-NOGPGCHECK"),
        flag(&[], &["--skip-broken"], "SC-YUM-F-SKIP-BROKEN"),
        flag(&[], &["--nodocs"], "SC-YUM-F-NODOCS"),
        flag(&[], &["--best"], "SC-YUM-F-BEST"),
        flag(&[], &["--allowerasing"], "SC-YUM-F-ALLOWERASING"),
        flag(&[], &["--refresh"], "SC-YUM-F-REFRESH"),
        flag(&['C'], &["--cacheonly"], "SC-YUM-F-CACHEONLY"),
        valued(&[], &["--setopt"], "SC-YUM-F-SETOPT"),
        valued(&[], &["--enablerepo"], "SC-YUM-F-ENABLEREPO"),
        valued(&[], &["--disablerepo"], "SC-YUM-F-DISABLEREPO"),
        valued(&[], &["--installroot"], "SC-YUM-F-INSTALLROOT"),
        valued(&[], &["--releasever"], "SC-YUM-F-RELEASEVER"),
        valued(&['x'], &["--exclude"], "SC-YUM-F-EXCLUDE"),
        valued(&[], &["--enable", "--disable"], "SC-YUM-F-MODULE-TOGGLE"),
    ],
    subcommands: &[
        sub_with(
            &["install", "localinstall", "reinstall"],
            "SC-YUM-INSTALL",
            "SC-YUM-PACKAGE",
        ),
        sub_with(&["groupinstall"], "SC-YUM-GROUPINSTALL", "SC-YUM-PACKAGE"),
        sub(&["update", "upgrade"], "SC-YUM-UPDATE"),
        sub(&["clean"], "SC-YUM-CLEAN"),
        sub_with(&["remove", "erase"], "SC-YUM-REMOVE", "SC-YUM-PACKAGE"),
        sub(&["makecache"], "SC-YUM-MAKECACHE"),
        sub(&["module"], "SC-YUM-MODULE"),
        sub(&["config-manager"], "SC-YUM-CONFIG-MANAGER"),
    ],
    ..command(&["yum", "dnf"], "SC-YUM")
};

const TAR: CommandSchema = CommandSchema {
    flags: &[
        flag(&['x'], &["--extract", "--get"], "SC-TAR-EXTRACT"),
        flag(&['c'], &["--create"], "SC-TAR-CREATE"),
        flag(&['t'], &["--list"], "SC-TAR-LIST"),
        valued_as(&['f'], &["--file"], "SC-TAR-F-FILE", "SC-TAR-ARCHIVE"),
        flag(&['z'], &["--gzip", "--gunzip", "--ungzip"], "SC-TAR-F-GZIP"),
        flag(&['j'], &["--bzip2"], "SC-TAR-F-BZIP2"),
        flag(&['J'], &["--xz"], "SC-TAR-F-XZ"),
        flag(&[], &["--zstd"], "SC-TAR-F-ZSTD"),
        flag(&['a'], &["--auto-compress"], "SC-TAR-F-AUTO-COMPRESS"),
        flag(&['v'], &["--verbose"], "SC-TAR-F-VERBOSE"),
        valued(&['C'], &["--directory"], "SC-TAR-F-DIRECTORY"),
        valued(
            &[],
            &["--strip-components", "--strip"],
            "SC-TAR-F-STRIP-COMPONENTS",
        ),
        valued(&[], &["--exclude"], "SC-TAR-F-EXCLUDE"),
        valued(&[], &["--owner"], "SC-TAR-F-OWNER"),
        valued(&[], &["--group"], "SC-TAR-F-GROUP"),
        valued(&[], &["--warning"], "SC-TAR-F-WARNING"),
        valued(
            &['I'],
            &["--use-compress-program"],
            "SC-TAR-F-USE-COMPRESS-PROGRAM",
        ),
        valued(&['T'], &["--files-from"], "SC-TAR-F-FILES-FROM"),
        flag(
            &['p'],
            &["--preserve-permissions", "--same-permissions"],
            "SC-TAR-F-PRESERVE-PERMISSIONS",
        ),
        flag(&['o'], &["--no-same-owner"], "SC-TAR-F-NO-SAME-OWNER"),
        flag(&[], &["--no-same-permissions"], "SC-TAR-F-NO-SAME-PERMISSIONS"),
        flag(&['k'], &["--keep-old-files"], "SC-TAR-F-KEEP-OLD-FILES"),
        flag(&['m'], &["--touch"], "SC-TAR-F-TOUCH"),
        flag(&['P'], &["--absolute-names"], "SC-TAR-F-ABSOLUTE-NAMES"),
        flag(&['O'], &["--to-stdout"], "SC-TAR-F-TO-STDOUT"),
        flag(&['S'], &["--sparse"], "SC-TAR-F-SPARSE"),
        flag(&['w'], &["--interactive"], "SC-TAR-F-INTERACTIVE"),
        flag(&[], &["--wildcards"], "SC-TAR-F-WILDCARDS"),
        flag(&[], &["--overwrite"], "SC-TAR-F-OVERWRITE"),
    ],
    positional: Some("SC-TAR-MEMBER"),
    bare_cluster: true,
    ..command(&["tar", "gtar", "bsdtar"], "SC-TAR")
};

const MKDIR: CommandSchema = CommandSchema {
    flags: &[
        flag(&['p'], &["--parents"], "SC-MKDIR-F-PARENTS"),
        flag(&['v'], &["--verbose"], "SC-MKDIR-F-VERBOSE"),
        valued(&['m'], &["--mode"], "SC-MKDIR-F-MODE"),
    ],
    positional: Some("SC-MKDIR-PATH"),
    ..command(&["mkdir"], "SC-MKDIR")
};

const RM: CommandSchema = CommandSchema {
    flags: &[
        flag(&['r', 'R'], &["--recursive"], "SC-RM-F-RECURSIVE"),
        flag(&['f'], &["--force"], "SC-RM-F-FORCE"),
        flag(&['v'], &["--verbose"], "SC-RM-F-VERBOSE"),
        flag(&['d'], &["--dir"], "SC-RM-F-DIR"),
        flag(&['i', 'I'], &["--interactive"], "SC-RM-F-INTERACTIVE"),
        flag(&[], &["--no-preserve-root"], "SC-RM-F-NO-PRESERVE-ROOT"),
        flag(&[], &["--preserve-root"], "SC-RM-F-PRESERVE-ROOT"),
        flag(&[], &["--one-file-system"], "SC-RM-F-ONE-FILE-SYSTEM"),
    ],
    positional: Some("SC-RM-PATH"),
    ..command(&["rm"], "SC-RM")
};

const MKTEMP: CommandSchema = CommandSchema {
    flags: &[
        flag(&['d'], &["--directory"], "SC-MKTEMP-D"),
        flag(&['q'], &["--quiet"], "SC-MKTEMP-F-QUIET"),
        flag(&['u'], &["--dry-run"], "SC-MKTEMP-F-DRY-RUN"),
        flag(&['t'], &[], "SC-MKTEMP-F-T"),
        valued(&['p'], &["--tmpdir"], "SC-MKTEMP-F-TMPDIR"),
        valued(&[], &["--suffix"], "SC-MKTEMP-F-SUFFIX"),
    ],
    positional: Some("SC-MKTEMP-TEMPLATE"),
    ..command(&["mktemp"], "SC-MKTEMP")
};

const GPG: CommandSchema = CommandSchema {
    flags: &[
        flag(&[], &["--verify"], "SC-GPG-VERIFY"),
        flag(&[], &["--verify-files"], "SC-GPG-VERIFY-FILES"),
        flag(&[], &["--batch"], "SC-GPG-F-BATCH"),
        flag(&[], &["--import"], "SC-GPG-F-IMPORT"),
        flag(&[], &["--export"], "SC-GPG-F-EXPORT"),
        flag(&[], &["--dearmor", "--dearmour"], "SC-GPG-F-DEARMOR"),
        flag(&['a'], &["--armor", "--armour"], "SC-GPG-F-ARMOR"),
        flag(&[], &["--no-tty"], "SC-GPG-F-NO-TTY"),
        flag(&['q'], &["--quiet"], "SC-GPG-F-QUIET"),
        flag(&[], &["--yes"], "SC-GPG-F-YES"),
        flag(&[], &["--fingerprint"], "SC-GPG-F-FINGERPRINT"),
        flag(&['k'], &["--list-keys"], "SC-GPG-F-LIST-KEYS"),
        flag(&[], &["--recv-keys", "--recv-key"], "SC-GPG-F-RECV-KEYS"),
        flag(&[], &["--no-default-keyring"], "SC-GPG-F-NO-DEFAULT-KEYRING"),
        flag(&[], &["--no-auto-key-locate"], "SC-GPG-F-NO-AUTO-KEY-LOCATE"),
        valued(&[], &["--keyserver"], "SC-GPG-F-KEYSERVER"),
        valued(&[], &["--keyserver-options"], "SC-GPG-F-KEYSERVER-OPTIONS"),
        valued(&[], &["--homedir"], "SC-GPG-F-HOMEDIR"),
        valued(&[], &["--keyring"], "SC-GPG-F-KEYRING"),
        valued(&[], &["--trust-model"], "SC-GPG-F-TRUST-MODEL"),
        valued(&[], &["--status-fd"], "SC-GPG-F-STATUS-FD"),
        valued(&['o'], &["--output"], "SC-GPG-F-OUTPUT"),
    ],
    positional: Some("SC-GPG-FILE"),
    ..command(&["gpg", "gpg2"], "SC-GPG")
};

const WGET: CommandSchema = CommandSchema {
    flags: &[
        valued_as(
            &['O'],
            &["--output-document"],
            "SC-WGET-F-OUTPUT-DOCUMENT",
            "SC-WGET-OUTPUT",
        ),
        valued(&['P'], &["--directory-prefix"], "SC-WGET-F-DIRECTORY-PREFIX"),
        valued(&[], &["--progress"], "SC-WGET-F-PROGRESS"),
        valued(&['t'], &["--tries"], "SC-WGET-F-TRIES"),
        valued(&['T'], &["--timeout"], "SC-WGET-F-TIMEOUT"),
        valued(&[], &["--header"], "SC-WGET-F-HEADER"),
        valued(&['U'], &["--user-agent"], "SC-WGET-F-USER-AGENT"),
        flag(&['q'], &["--quiet"], "SC-WGET-F-QUIET"),
        flag(&['c'], &["--continue"], "SC-WGET-F-CONTINUE"),
        flag(&['N'], &["--timestamping"], "SC-WGET-F-TIMESTAMPING"),
        flag(&['S'], &["--server-response"], "SC-WGET-F-SERVER-RESPONSE"),
        flag(&[], &["--no-check-certificate"], "SC-WGET-F-NO-CHECK-CERTIFICATE"),
        flag(&[], &["--show-progress"], "SC-WGET-F-SHOW-PROGRESS"),
        flag(&[], &["--https-only"], "SC-WGET-F-HTTPS-ONLY"),
        flag(&[], &["--no-verbose"], "SC-WGET-F-NO-VERBOSE"),
    ],
    positional: Some("SC-WGET-URL"),
    clustered_short: false,
    ..command(&["wget"], "SC-WGET")
};

const CURL: CommandSchema = CommandSchema {
    flags: &[
        valued_as(&['o'], &["--output"], "SC-CURL-F-OUTPUT", "SC-CURL-OUTPUT"),
        flag(&['O'], &["--remote-name"], "SC-CURL-F-REMOTE-NAME"),
        flag(&['J'], &["--remote-header-name"], "SC-CURL-F-REMOTE-HEADER-NAME"),
        flag(&['L'], &["--location"], "SC-CURL-F-LOCATION"),
        flag(&['s'], &["--silent"], "SC-CURL-F-SILENT"),
        flag(&['S'], &["--show-error"], "SC-CURL-F-SHOW-ERROR"),
        flag(&['f'], &["--fail"], "SC-CURL-F-FAIL"),
        flag(&['k'], &["--insecure"], "SC-CURL-F-INSECURE"),
        flag(&['v'], &["--verbose"], "SC-CURL-F-VERBOSE"),
        flag(&['#'], &["--progress-bar"], "SC-CURL-F-PROGRESS-BAR"),
        flag(&[], &["--compressed"], "SC-CURL-F-COMPRESSED"),
        flag(&[], &["--create-dirs"], "SC-CURL-F-CREATE-DIRS"),
        flag(&[], &["--fail-with-body"], "SC-CURL-F-FAIL-WITH-BODY"),
        flag(&[], &["--tlsv1.2"], "SC-CURL-F-TLSV1-2"),
        valued(&[], &["--retry"], "SC-CURL-F-RETRY"),
        valued(&[], &["--retry-delay"], "SC-CURL-F-RETRY-DELAY"),
        valued(&[], &["--connect-timeout"], "SC-CURL-F-CONNECT-TIMEOUT"),
        valued(&['m'], &["--max-time"], "SC-CURL-F-MAX-TIME"),
        valued(&['H'], &["--header"], "SC-CURL-F-HEADER"),
        valued(&['X'], &["--request"], "SC-CURL-F-REQUEST"),
        valued(&['d'], &["--data"], "SC-CURL-F-DATA"),
        valued(&['w'], &["--write-out"], "SC-CURL-F-WRITE-OUT"),
        valued(&['u'], &["--user"], "SC-CURL-F-USER"),
        valued(&['A'], &["--user-agent"], "SC-CURL-F-USER-AGENT"),
        valued(&['C'], &["--continue-at"], "SC-CURL-F-CONTINUE-AT"),
        valued(&['x'], &["--proxy"], "SC-CURL-F-PROXY"),
        valued(&[], &["--proto"], "SC-CURL-F-PROTO"),
        valued(&[], &["--cacert"], "SC-CURL-F-CACERT"),
    ],
    positional: Some("SC-CURL-URL"),
    ..command(&["curl"], "SC-CURL")
};

const CD: CommandSchema = CommandSchema {
    positional: Some("SC-CD-PATH"),
    clustered_short: false,
    ..command(&["cd"], "SC-CD")
};

const ECHO: CommandSchema = CommandSchema {
    flags: &[
        flag(&['n'], &[], "SC-ECHO-F-N"),
        flag(&['e'], &[], "SC-ECHO-F-E"),
        flag(&['E'], &[], "SC-ECHO-F-CAPITAL-E"),
    ],
    positional: Some("SC-ECHO-ARG"),
    ..command(&["echo"], "SC-ECHO")
};

/// Every schema known to enrichment.
pub static SCHEMAS: &[CommandSchema] = &[
    APT_GET, APT, APK, PIP, NPM, NPX, YARN, GEM, YUM, TAR, MKDIR, RM, MKTEMP, GPG, WGET, CURL, CD, ECHO,
];

pub static WRAPPERS: &[WrapperPolicy] = &[
    WrapperPolicy {
        names: &["sudo"],
        label: "SC-SUDO",
        valued_options: &[
            "-u", "-g", "-C", "-h", "-p", "-U", "-r", "-t", "-D", "--user", "--group",
        ],
        skips_assignments: true,
        terminal_options: &["-l", "-v", "-k", "-K", "-V", "--version", "--help"],
        numeric_options: false,
    },
    WrapperPolicy {
        names: &["env"],
        label: "SC-ENV",
        valued_options: &["-u", "-C", "-S", "--unset", "--chdir", "--split-string"],
        skips_assignments: true,
        terminal_options: &["--help", "--version"],
        numeric_options: false,
    },
    WrapperPolicy {
        names: &["command"],
        label: "SC-COMMAND",
        valued_options: &[],
        skips_assignments: false,
        terminal_options: &["-v", "-V"],
        numeric_options: false,
    },
    WrapperPolicy {
        names: &["nice"],
        label: "SC-NICE",
        valued_options: &["-n", "--adjustment"],
        skips_assignments: false,
        terminal_options: &["--help", "--version"],
        numeric_options: true,
    },
    WrapperPolicy {
        names: &["time"],
        label: "SC-TIME",
        valued_options: &["-f", "-o", "--format", "--output"],
        skips_assignments: false,
        terminal_options: &["--help", "--version"],
        numeric_options: false,
    },
    WrapperPolicy {
        names: &["nohup"],
        label: "SC-NOHUP",
        valued_options: &[],
        skips_assignments: false,
        terminal_options: &["--help", "--version"],
        numeric_options: false,
    },
];
