#!/usr/bin/env python3
"""Regenerate src/depdetect/data/categories.tsv.

One `category<TAB>word` line per word; file order defines feature indices.
194 general categories, then the curated depression category appended last.
"""

from pathlib import Path

CATEGORIES = [
    ("help", "help assist support aid rescue guide volunteer helping advice"),
    ("office", "office desk meeting printer cubicle paperwork staff manager memo"),
    ("dance", "dance dancing ballet choreography dancer rhythm salsa disco"),
    ("money", "money cash dollar salary wallet coins payment budget spend rich"),
    ("wedding", "wedding bride groom marriage ceremony ring honeymoon vows"),
    ("domestic_work", "laundry dishes chores vacuum ironing mopping housework sweeping"),
    ("sleep", "sleep nap dream pillow bed tired asleep rest snooze drowsy insomnia"),
    ("medical_emergency", "ambulance emergency paramedic hospital injury trauma icu overdose"),
    ("cold", "cold freezing ice frost chilly winter snow shiver frozen"),
    ("hate", "hate hatred despise loathe resent detest hateful hostility"),
    ("cheerfulness", "cheerful merry jolly upbeat sunny smiling bubbly chipper"),
    ("aggression", "aggressive attack hostile assault threaten violent fierce bully"),
    ("occupation", "job career occupation profession employment worker employee hire"),
    ("envy", "envy jealous jealousy envious covet resentful grudge"),
    ("anticipation", "anticipate expect await upcoming eager soon forecast countdown"),
    ("family", "family mother father sister brother parents grandma grandpa cousin aunt"),
    ("vacation", "vacation holiday getaway resort trip leisure sightseeing relaxation"),
    ("crime", "crime theft robbery fraud criminal felony murder burglary gang"),
    ("attractive", "attractive gorgeous handsome pretty cute stunning charming alluring"),
    ("masculine", "masculine manly macho rugged beard muscular gentleman dude"),
    ("prison", "prison jail inmate warden cell sentence parole convict bars"),
    ("health", "health doctor medicine hospital wellness clinic nurse checkup healthy treatment"),
    ("pride", "pride proud dignity honor accomplished achievement boast"),
    ("dispute", "dispute argument quarrel disagreement conflict debate feud clash"),
    ("nervousness", "nervous anxious jittery uneasy worried tense restless apprehensive"),
    ("government", "government parliament senate policy minister federal congress election"),
    ("weakness", "weak weakness feeble frail fragile powerless helpless exhausted"),
    ("horror", "horror terrifying creepy dread ghastly nightmare haunted macabre"),
    ("swearing_terms", "damn hell crap shit fuck fucking bloody bastard wtf"),
    ("leisure", "leisure relax hobby pastime unwind lounging chill recreation"),
    ("suffering", "suffering agony misery torment anguish pain hardship ordeal distress"),
    ("royalty", "king queen prince princess royal crown throne palace monarch"),
    ("wealthy", "wealthy rich millionaire fortune luxury mansion affluent lavish"),
    ("tourism", "tourism tourist sightseeing landmark souvenir itinerary attraction guidebook"),
    ("furniture", "furniture sofa couch table chair wardrobe shelf drawer cabinet"),
    ("school", "school teacher classroom homework student lesson grade exam textbook"),
    ("magic", "magic wizard spell witch sorcery enchanted wand potion mystical"),
    ("beach", "beach sand surf waves seaside shore sunbathing tide boardwalk"),
    ("journalism", "journalist reporter newspaper headline editor press coverage article"),
    ("morning", "morning sunrise dawn breakfast alarm early waking daybreak"),
    ("banking", "bank banking account deposit loan mortgage teller savings interest"),
    ("social_media", "twitter facebook instagram hashtag tweet follower post selfie viral"),
    ("exercise", "exercise workout gym jogging pushup fitness training cardio stretching"),
    ("night", "night midnight dark evening moonlight nocturnal dusk bedtime"),
    ("kill", "kill murder slay execute slaughter assassinate killing dead"),
    ("blue_collar_job", "factory mechanic plumber welder construction electrician laborer foreman"),
    ("art", "art painting sculpture gallery canvas artist drawing sketch mural"),
    ("ritual", "ritual ceremony rite tradition sacrament offering incense procession"),
    ("childish", "childish silly immature playful juvenile giggly toddler naive"),
    ("exasperation", "exasperated frustrated annoyed irritated fedup aggravated sigh ugh"),
    ("law", "law legal statute court attorney lawsuit judge contract clause"),
    ("neglect", "neglect abandoned ignored forsaken unattended forgotten uncared deserted"),
    ("swimming", "swimming swim pool diving freestyle swimmer goggles lap"),
    ("exotic", "exotic tropical foreign rare unusual faraway oriental unfamiliar"),
    ("love", "love adore romance darling sweetheart beloved affectionate devotion"),
    ("hiking", "hiking trail trek backpack summit mountain climb wilderness"),
    ("communication", "communicate message conversation discussion dialogue correspond contact chat"),
    ("hearing", "hear hearing listen sound ears audible deaf echo"),
    ("order", "order organize arrange tidy systematic neat sequence sorted"),
    ("sympathy", "sympathy condolence compassion comforting pity empathy consoling"),
    ("hygiene", "hygiene shower soap toothbrush shampoo clean wash sanitary deodorant"),
    ("weather", "weather rain storm sunshine forecast cloudy humidity breeze thunder"),
    ("anonymity", "anonymous unknown unnamed incognito hidden faceless stranger secret"),
    ("trust", "trust reliable faithful honest dependable loyal trustworthy sincere"),
    ("ancient", "ancient antique archaic prehistoric ruins relic centuries medieval"),
    ("deception", "deceive lie cheat trick fraud betray mislead hoax dishonest"),
    ("fabric", "fabric cotton silk wool linen cloth textile velvet polyester"),
    ("air_travel", "flight airplane airport pilot boarding runway airline luggage jet"),
    ("fight", "fight punch brawl combat wrestle duel scuffle slap"),
    ("dominant_heirarchical", "dominant hierarchy rank superior subordinate command authority obey"),
    ("music", "music song melody concert guitar piano playlist album chorus"),
    ("vehicle", "vehicle car truck bus van motorcycle engine wheels sedan"),
    ("politeness", "polite courteous respectful thankful gracious manners please welcome"),
    ("toy", "toy doll lego puzzle teddy playset blocks action figurine"),
    ("farming", "farm farmer harvest tractor crops barn livestock plow field"),
    ("meeting", "meeting agenda conference schedule appointment discussion attendees minutes"),
    ("war", "war battle soldier army combat invasion warfare troops frontline"),
    ("speaking", "speak talk speech announce say telling spoken discuss"),
    ("listen", "listen listening heard attentive overhear eavesdrop audience"),
    ("urban", "urban city downtown skyscraper metro subway neighborhood sidewalk"),
    ("shopping", "shopping store mall purchase cart checkout groceries bargain retail"),
    ("disgust", "disgust gross revolting nasty repulsive vile sickening yuck"),
    ("fire", "fire flame burn blaze smoke ember arson wildfire ash"),
    ("tool", "tool hammer screwdriver wrench drill pliers saw toolbox"),
    ("phone", "phone call dial smartphone ringtone voicemail texting mobile"),
    ("gain", "gain profit increase acquire earn growth obtain accumulate"),
    ("sound", "sound noise loud echo acoustic hum buzz tone volume"),
    ("injury", "injury wound bruise sprain fracture bleeding scar broken limp"),
    ("sailing", "sailing sailboat anchor harbor mast voyage nautical deck"),
    ("rage", "rage fury furious wrath seething livid outburst tantrum"),
    ("science", "science experiment laboratory hypothesis physics chemistry research data"),
    ("work", "work working task project deadline overtime shift labor effort"),
    ("appearance", "appearance looks style outfit grooming complexion makeup image"),
    ("valuable", "valuable precious priceless treasure worth gem prized costly"),
    ("warmth", "warm warmth cozy snug toasty heat comforting mild"),
    ("youth", "youth young teenager kid adolescent childhood juvenile teen"),
    ("sadness", "sad sadness sorrow gloomy tears unhappy melancholy heartbroken mourning blue"),
    ("fun", "fun enjoyable amusing entertaining playful hilarious blast laughter"),
    ("emotional", "emotional feelings mood sentimental tearful moving touched heartfelt"),
    ("joy", "joy delight bliss happiness gleeful jubilant elated thrilled"),
    ("affection", "affection hug cuddle embrace tenderness caress fondness warmth"),
    ("traveling", "travel traveling journey destination passport wanderlust commute abroad"),
    ("fashion", "fashion style trendy designer runway couture wardrobe chic"),
    ("ugliness", "ugly hideous unsightly grotesque unattractive repugnant deformed"),
    ("lust", "lust desire seductive sensual craving passionate yearning flirt"),
    ("shame", "shame ashamed embarrassed humiliated disgrace guilt blush remorse"),
    ("torment", "torment torture anguish agonize plague haunt suffering cruelty"),
    ("economics", "economy economics inflation recession market trade gdp fiscal"),
    ("anger", "anger angry mad irate fuming irritated annoyed temper"),
    ("politics", "politics politician campaign vote ballot liberal conservative senate"),
    ("ship", "ship vessel cargo hull captain fleet cruise freighter"),
    ("clothing", "clothes shirt pants jacket dress socks sweater jeans scarf"),
    ("car", "car driving highway garage sedan tires brake steering traffic"),
    ("strength", "strength strong powerful mighty muscular sturdy tough vigorous"),
    ("technology", "technology software gadget digital innovation device hardware robot"),
    ("breaking", "break broken shatter crack smash snap burst crumble"),
    ("shape_and_size", "tiny huge round square narrow wide enormous shape oval"),
    ("power", "power control powerful authority force influence mighty rule"),
    ("white_collar_job", "accountant consultant analyst executive lawyer auditor clerk banker"),
    ("animal", "animal dog cat lion tiger elephant wildlife creature zoo"),
    ("party", "party celebration birthday confetti balloons dj guests festive"),
    ("terrorism", "terrorism terrorist bomb extremist hostage attack hijack insurgent"),
    ("smell", "smell scent aroma fragrance odor stink perfume sniff"),
    ("disappointment", "disappointed letdown dismay regret disillusioned underwhelmed failed"),
    ("poor", "poor poverty broke homeless needy destitute penniless impoverished"),
    ("plant", "plant flower tree garden leaves roots seedling blossom fern"),
    ("pain", "pain ache hurt sore throbbing agony burning stinging chronic"),
    ("beauty", "beauty beautiful elegant lovely radiant graceful exquisite pretty"),
    ("timidity", "timid shy bashful hesitant meek sheepish reserved quiet"),
    ("philosophy", "philosophy ethics metaphysics logic existential wisdom reasoning socrates"),
    ("negotiate", "negotiate bargain compromise settlement mediate haggle deal terms"),
    ("negative_emotion", "awful terrible horrible miserable upset dreadful worst unhappy bitter hurt"),
    ("cleaning", "cleaning scrub wipe polish dusting rinse detergent spotless"),
    ("messaging", "message text dm inbox chat reply email sms"),
    ("competing", "compete competition rival contest tournament versus opponent championship"),
    ("law_enforcement", "police officer sheriff patrol detective arrest precinct badge"),
    ("heroic", "hero heroic brave courageous valiant fearless gallant savior"),
    ("celebration", "celebrate celebration festival anniversary cheers toast fireworks parade"),
    ("restaurant", "restaurant menu waiter chef dinner reservation bistro diner cuisine"),
    ("violence", "violence violent brutal bloodshed beating savage vicious cruelty"),
    ("programming", "programming code software developer debugging python algorithm compiler"),
    ("dominant_personality", "assertive bossy confident commanding forceful decisive stubborn"),
    ("military", "military army navy soldier battalion regiment barracks veteran"),
    ("real_estate", "property realtor mortgage apartment landlord tenant lease condo"),
    ("academic", "academic university professor thesis research lecture scholarship campus"),
    ("divine", "divine holy sacred god heavenly blessed angel spiritual"),
    ("sexual", "sexual intimate erotic aroused seduce sexuality passion naked"),
    ("fear", "fear afraid scared terrified frightened panic dread phobia"),
    ("irritability", "irritable grumpy cranky touchy moody snappy testy grouchy"),
    ("superhero", "superhero cape villain superpower marvel rescue masked avenger"),
    ("business", "business company startup revenue corporate entrepreneur client firm"),
    ("driving", "drive driving driver license steering commute lane parked speeding"),
    ("pet", "pet puppy kitten leash vet adopt furry paws collar"),
    ("cooking", "cooking recipe bake oven simmer ingredients stir fry seasoning"),
    ("monster", "monster beast zombie vampire werewolf demon ogre ghoul"),
    ("ocean", "ocean sea waves coral reef marine tide seawater deep"),
    ("giving", "give giving donate gift charity generosity contribute offering"),
    ("contentment", "content satisfied fulfilled serene peaceful gratified pleased calm"),
    ("writing", "write writing author manuscript pen draft novel essay journal"),
    ("rural", "rural countryside village farmland pasture meadow barn remote"),
    ("positive_emotion", "great wonderful amazing fantastic excellent awesome brilliant superb glad"),
    ("musical", "musical orchestra symphony violin choir opera instrumental band"),
    ("religion", "religion church prayer faith worship temple mosque bible scripture"),
    ("sports", "sports football basketball soccer athlete stadium league score team"),
    ("independence", "independent freedom autonomy selfreliant liberty sovereign standalone"),
    ("computer", "computer laptop keyboard monitor processor desktop mouse screen"),
    ("body", "body arms legs shoulders torso muscles skin bones spine"),
    ("noise", "noise loud racket clamor din blaring deafening rattle"),
    ("eating", "eat eating lunch dinner snack chew swallow appetite meal hungry"),
    ("medieval", "medieval knight castle sword armor dungeon feudal crusade"),
    ("zest", "zest enthusiasm gusto energetic vigor spirited lively keen"),
    ("confusion", "confused puzzled baffled bewildered perplexed unsure unclear dazed"),
    ("optimism", "optimistic hopeful upbeat positive confident encouraging promising bright"),
    ("payment", "payment pay invoice bill transaction fee installment receipt"),
    ("stealing", "steal stolen thief shoplifting robbery pickpocket loot snatch"),
    ("feminine", "feminine womanly ladylike graceful delicate motherly girlish"),
    ("hipster", "hipster vintage indie artisanal thrift quirky retro craft"),
    ("internet", "internet online website browser wifi streaming download url"),
    ("surprise", "surprise unexpected astonished shocked startled sudden amazed stunned"),
    ("reading", "read reading book novel chapter library bookmark pages"),
    ("worship", "worship praise devotion reverence adore glorify kneel altar"),
    ("leader", "leader chief captain director boss commander president founder"),
    ("sin", "sin sinner guilt wicked immoral transgression vice repent"),
    ("weapon", "weapon gun knife rifle pistol blade ammunition sword"),
    ("children", "children child baby toddler infant kids playground nursery"),
    ("legend", "legend myth folklore epic tale heroic saga legendary"),
    ("movement", "move movement motion walking running shifting travel momentum"),
    ("exhaustion", "exhausted drained fatigued weary burnout sleepy depleted worn"),
    ("friends", "friend friends buddy pal bestie companionship mate hangout"),
    ("gratitude", "grateful thankful appreciate gratitude blessed thanks indebted"),
    ("hostility", "hostile antagonism animosity spite malice vendetta unfriendly"),
    ("loneliness", "lonely alone isolated solitary friendless abandoned withdrawn lonesome"),
    ("mental_illness", "psychiatric disorder bipolar schizophrenia ptsd ocd paranoia psychosis"),
    ("self_harm", "selfharm cutting scars overdose harming relapse urges razor"),
]

DEPRESSION = (
    "depression",
    "depressed depressing depression anxiety anxious hopeless hopelessness worthless "
    "worthlessness suicidal suicide selfharm therapy therapist antidepressant antidepressants "
    "insomnia lonely loneliness numb empty emptiness despair misery miserable exhausted "
    "panic breakdown crying overwhelmed helpless burnout grief trauma psychiatrist "
    "counselling meds diagnosed struggling unbearable sadness",
)


def main() -> None:
    assert len(CATEGORIES) == 194, f"need exactly 194 general categories, have {len(CATEGORIES)}"
    names = [name for name, _ in CATEGORIES]
    assert len(set(names)) == 194, "duplicate category names"
    out = Path(__file__).resolve().parents[1] / "src" / "depdetect" / "data" / "categories.tsv"
    with out.open("w", encoding="utf-8") as fh:
        for name, words in CATEGORIES + [("depression_terms", DEPRESSION[1])]:
            seen = set()
            for w in words.split():
                if w not in seen:
                    fh.write(f"{name}\t{w}\n")
                    seen.add(w)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
